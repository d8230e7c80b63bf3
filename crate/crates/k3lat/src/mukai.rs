//! The K3 layer: the extended Néron–Severi lattice `N(S)` of a K3 surface
//! with fixed Néron–Severi Gram matrix, Mukai vectors `(r, E, s)` with the
//! pairing `(r,l,s)·(r',l',s') = l·l' - rs' - sr'`, and per-vector verdicts
//! about the moduli space of stable sheaves: existence and dimension,
//! divisibility, fineness, the order of the obstruction Brauer class, and
//! the class `v/div(v)` in the discriminant group.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::discform::{self, DiscElement, FiniteQuadraticForm};
use crate::error::{Error, Result};
use crate::lattice::{IntegralLattice, Sublattice};
use crate::mat;

/// A K3 surface presented by its Néron–Severi lattice (signature
/// `(1, rank-1)`), with an optional ample class used only as an
/// effectivity proxy for rank-zero Mukai vectors.
#[derive(Clone, Debug)]
pub struct K3Model {
    ns: IntegralLattice,
    ample: Option<Vec<BigInt>>,
    extended: IntegralLattice,
}

impl K3Model {
    pub fn new(ns: IntegralLattice, ample: Option<Vec<BigInt>>) -> Result<Self> {
        let (pos, neg) = ns.signature();
        if pos != 1 || neg != ns.rank() - 1 {
            return Err(Error::BadSignature { pos, neg });
        }
        if let Some(a) = &ample {
            if !ns.square(a)?.is_positive() {
                return Err(Error::AmpleNotPositive);
            }
        }
        let extended = extend_by_mukai_plane(&ns);
        Ok(K3Model { ns, ample, extended })
    }

    pub fn ns(&self) -> &IntegralLattice {
        &self.ns
    }

    pub fn ample(&self) -> Option<&[BigInt]> {
        self.ample.as_deref()
    }

    /// `N(S) = H^0 + NS + H^4` with the Mukai pairing, coordinates ordered
    /// `(r, E..., s)`: the NS block sits in the middle and the `(r, s)`
    /// block is `[[0,-1],[-1,0]]`.
    pub fn extended_ns(&self) -> &IntegralLattice {
        &self.extended
    }

    /// Discriminant form of `N(S)`.
    pub fn disc_form(&self) -> FiniteQuadraticForm {
        discform::discriminant_form(&self.extended)
    }
}

fn extend_by_mukai_plane(ns: &IntegralLattice) -> IntegralLattice {
    let rho = ns.rank();
    let n = rho + 2;
    let mut rows = vec![vec![BigInt::zero(); n]; n];
    rows[0][n - 1] = BigInt::from(-1);
    rows[n - 1][0] = BigInt::from(-1);
    for i in 0..rho {
        for j in 0..rho {
            rows[1 + i][1 + j] = ns.gram().at(i, j).clone();
        }
    }
    IntegralLattice::new(rows).expect("Mukai extension of a non-degenerate even lattice")
}

/// A Mukai vector `(r, E, s)` with `E` in Néron–Severi coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MukaiVector {
    pub r: BigInt,
    pub e: Vec<BigInt>,
    pub s: BigInt,
}

impl MukaiVector {
    pub fn new(r: impl Into<BigInt>, e: Vec<BigInt>, s: impl Into<BigInt>) -> Self {
        MukaiVector { r: r.into(), e, s: s.into() }
    }

    pub fn from_i64(r: i64, e: &[i64], s: i64) -> Self {
        MukaiVector::new(r, e.iter().map(|&x| BigInt::from(x)).collect(), s)
    }

    /// Coordinates in the `(r, E..., s)` ordering of `N(S)`.
    pub fn coords(&self) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(self.e.len() + 2);
        out.push(self.r.clone());
        out.extend(self.e.iter().cloned());
        out.push(self.s.clone());
        out
    }
}

/// What the moduli space of stable sheaves with a given primitive Mukai
/// vector looks like, at the level the lattice data decides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuliSpaceKind {
    /// `v^2 < -2`.
    Empty,
    /// `v^2 = -2`: a single rigid sheaf.
    Point,
    /// `v^2 >= 0` in a covered case: hyperkähler of dimension `v^2 + 2`
    /// (a K3 surface when the dimension is 2).
    HyperKaehler { dim: BigInt },
    /// The existence theorem does not apply to this vector as given.
    NotCovered { reason: String },
}

/// `v^2 = E^2 - 2rs`.
pub fn mukai_square(model: &K3Model, v: &MukaiVector) -> Result<BigInt> {
    let e_sq = model.ns().square(&v.e)?;
    Ok(e_sq - BigInt::from(2) * &v.r * &v.s)
}

/// Existence and dimension of the moduli space for a primitive vector,
/// assuming a generic polarisation.
pub fn moduli_exists(model: &K3Model, v: &MukaiVector) -> Result<ModuliSpaceKind> {
    let coords = v.coords();
    if !model.extended.is_primitive(&coords).unwrap_or(false) {
        return Err(Error::MukaiNotPrimitive);
    }
    let sq = mukai_square(model, v)?;
    if sq < BigInt::from(-2) {
        return Ok(ModuliSpaceKind::Empty);
    }
    let covered = if v.r.is_positive() {
        true
    } else if v.r.is_negative() {
        return Ok(ModuliSpaceKind::NotCovered {
            reason: String::from("rank is negative; covered cases are r>0, (r=0, E effective), (r=E=0, s>0)"),
        });
    } else if v.e.iter().all(|x| x.is_zero()) {
        if v.s.is_positive() {
            true
        } else {
            return Ok(ModuliSpaceKind::NotCovered {
                reason: String::from("r = E = 0 requires s > 0"),
            });
        }
    } else {
        match model.ample() {
            Some(a) => {
                let pair = model.ns().pairing(&v.e, a)?;
                if pair.is_positive() {
                    true
                } else {
                    return Ok(ModuliSpaceKind::NotCovered {
                        reason: String::from(
                            "E pairs non-positively with the ample hint; effectivity proxy failed",
                        ),
                    });
                }
            }
            None => {
                return Ok(ModuliSpaceKind::NotCovered {
                    reason: String::from(
                        "r = 0 and no ample hint; effectivity of E is not decidable from the Gram matrix",
                    ),
                })
            }
        }
    };
    debug_assert!(covered);
    if sq == BigInt::from(-2) {
        Ok(ModuliSpaceKind::Point)
    } else {
        Ok(ModuliSpaceKind::HyperKaehler { dim: sq + BigInt::from(2) })
    }
}

/// The class `v / div(v)` in the discriminant group of `N(S)`. Its order
/// equals the divisibility of `v`.
pub fn caldararu_class(model: &K3Model, v: &MukaiVector) -> Result<DiscElement> {
    let form = model.disc_form();
    caldararu_class_in(model, &form, v)
}

fn caldararu_class_in(
    model: &K3Model,
    form: &FiniteQuadraticForm,
    v: &MukaiVector,
) -> Result<DiscElement> {
    let coords = v.coords();
    if !model.extended.is_primitive(&coords).unwrap_or(false) {
        return Err(Error::MukaiNotPrimitive);
    }
    let div = model.extended.divisibility(&coords)?;
    let rational: Vec<BigRational> =
        coords.iter().map(|c| BigRational::new(c.clone(), div.clone())).collect();
    let class = form.element_of(&rational)?;
    debug_assert_eq!(form.order_of(&class), div);
    Ok(class)
}

/// Everything the lattice decides about `M_H(v)` for primitive `v`, under
/// a `v`-generic polarisation.
#[derive(Clone, Debug)]
pub struct ModuliReport {
    pub v: MukaiVector,
    pub v_square: BigInt,
    pub kind: ModuliSpaceKind,
    /// `None` when the existence theorem does not cover the vector.
    pub nonempty: Option<bool>,
    pub dimension: Option<BigInt>,
    pub div_v: BigInt,
    /// `div(v) = 1`, equivalently the obstruction class vanishes.
    pub fine: bool,
    /// Order of the obstruction class in the Brauer group of the moduli
    /// space; equals `div(v)`.
    pub obstruction_order: BigInt,
    /// Order of the kernel of `Br(M) -> Br(S)`; equals `div(v)`.
    pub ses_kernel_order: BigInt,
    /// Discriminant form of `N(S)`.
    pub disc_form: FiniteQuadraticForm,
    /// `v / div(v)` in the discriminant group.
    pub caldararu: DiscElement,
    pub caldararu_order: BigInt,
    /// The same coefficients read in the (-1)-twisted form, which is where
    /// the transcendental copy of the class lives.
    pub transcendental_form: FiniteQuadraticForm,
    pub transcendental: DiscElement,
    /// Genericity of the polarisation is an assumption, not a computation.
    pub assumes_generic_polarisation: bool,
}

pub fn moduli_report(model: &K3Model, v: &MukaiVector) -> Result<ModuliReport> {
    let kind = moduli_exists(model, v)?;
    let v_square = mukai_square(model, v)?;
    let coords = v.coords();
    let div_v = model.extended.divisibility(&coords)?;
    let disc_form = model.disc_form();
    let caldararu = caldararu_class_in(model, &disc_form, v)?;
    let caldararu_order = disc_form.order_of(&caldararu);
    assert_eq!(caldararu_order, div_v, "order of v/div(v) must equal div(v)");
    let transcendental_form = disc_form.negate();
    let transcendental = caldararu.clone();
    let (nonempty, dimension) = match &kind {
        ModuliSpaceKind::Empty => (Some(false), None),
        ModuliSpaceKind::Point => (Some(true), Some(BigInt::zero())),
        ModuliSpaceKind::HyperKaehler { dim } => (Some(true), Some(dim.clone())),
        ModuliSpaceKind::NotCovered { .. } => (None, None),
    };
    let fine = div_v.is_one();
    Ok(ModuliReport {
        v: v.clone(),
        v_square,
        kind,
        nonempty,
        dimension,
        fine,
        obstruction_order: div_v.clone(),
        ses_kernel_order: div_v.clone(),
        div_v,
        disc_form,
        caldararu,
        caldararu_order,
        transcendental_form,
        transcendental,
        assumes_generic_polarisation: true,
    })
}

/// Two orthogonal hyperbolic planes inside a lattice, each given by a pair
/// of vectors with Gram `[[0,1],[1,0]]`.
#[derive(Clone, Debug)]
pub struct HyperbolicWitness {
    pub first: [Vec<BigInt>; 2],
    pub second: [Vec<BigInt>; 2],
}

fn verify_hyperbolic_witness(l: &IntegralLattice, w: &HyperbolicWitness) -> Result<()> {
    for pair in [&w.first, &w.second] {
        if !l.square(&pair[0])?.is_zero()
            || !l.square(&pair[1])?.is_zero()
            || !l.pairing(&pair[0], &pair[1])?.is_one()
        {
            return Err(Error::BadHyperbolicWitness("a pair does not span a hyperbolic plane"));
        }
    }
    for a in &w.first {
        for b in &w.second {
            if !l.pairing(a, b)?.is_zero() {
                return Err(Error::BadHyperbolicWitness("the two planes are not orthogonal"));
            }
        }
    }
    Ok(())
}

/// Criterion for two primitive vectors to lie in the same orbit of the
/// isometry group acting trivially on the discriminant group: equal squares
/// and equal classes `v/div(v)` in `A_L`. Requires a verified embedding of
/// two orthogonal hyperbolic planes.
pub fn orbit_equivalent(
    l: &IntegralLattice,
    v: &[BigInt],
    u: &[BigInt],
    witness: &HyperbolicWitness,
) -> Result<bool> {
    verify_hyperbolic_witness(l, witness)?;
    if !l.is_primitive(v)? {
        return Err(Error::NotPrimitiveVector("the ambient lattice"));
    }
    if !l.is_primitive(u)? {
        return Err(Error::NotPrimitiveVector("the ambient lattice"));
    }
    if l.square(v)? != l.square(u)? {
        return Ok(false);
    }
    let form = discform::discriminant_form(l);
    let class = |x: &[BigInt]| -> Result<DiscElement> {
        let div = l.divisibility(x)?;
        let rational: Vec<BigRational> =
            x.iter().map(|c| BigRational::new(c.clone(), div.clone())).collect();
        form.element_of(&rational)
    };
    Ok(class(v)? == class(u)?)
}

/// The Néron–Severi lattice of the moduli space: the saturated orthogonal
/// complement of `v` inside `N(S)`.
pub fn ns_of_moduli(model: &K3Model, v: &MukaiVector) -> Result<Sublattice> {
    let coords = v.coords();
    if !model.extended.is_primitive(&coords).unwrap_or(false) {
        return Err(Error::MukaiNotPrimitive);
    }
    if mukai_square(model, v)?.is_negative() {
        return Err(Error::BadParameter("moduli NS requires v^2 >= 0"));
    }
    let span = Sublattice::new(&model.extended, vec![coords])?;
    Ok(span.orthogonal_complement())
}

/// Determinant bookkeeping for a complement: `det(N)·det(N^perp)` equals
/// `det(L)` times the square of the index of `N + N^perp` in `L`.
pub fn complement_determinant_identity(l: &IntegralLattice, n: &Sublattice) -> bool {
    let t = n.orthogonal_complement();
    if n.rank() + t.rank() != l.rank() {
        return false;
    }
    let mut joint = n.basis().to_vec();
    joint.extend(t.basis().to_vec());
    let mut bm = crate::mat::IntMat::zero(l.rank(), joint.len());
    for (j, v) in joint.iter().enumerate() {
        for (i, x) in v.iter().enumerate() {
            *bm.at_mut(i, j) = x.clone();
        }
    }
    let index = mat::snf(&bm).nonzero_product();
    let dn = mat::det(n.gram());
    let dt = mat::det(t.gram());
    dn * dt == l.det() * &index * &index
}
