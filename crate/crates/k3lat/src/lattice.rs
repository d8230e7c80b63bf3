//! Even integral lattices with exact integer Gram matrices, sublattices with
//! saturation, orthogonal complements, and the two verifiers that check the
//! structure of primitive sublattices of unimodular lattices: the
//! discriminant glue map and the pairing-congruence cokernel.
//!
//! Vectors are column vectors of coordinates in the lattice basis; the
//! pairing is `u^T · gram · v`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::discform::{self, DiscElement, FiniteQuadraticForm};
use crate::error::{Error, Result};
use crate::mat::{self, IntMat};

/// An even, non-degenerate integral lattice, presented by its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralLattice {
    gram: IntMat,
    det: BigInt,
    label: Option<String>,
}

impl IntegralLattice {
    pub fn new(gram_rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = gram_rows.len();
        if gram_rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare);
        }
        let gram = IntMat::from_rows(gram_rows);
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        for i in 0..n {
            if gram.at(i, i).is_odd() {
                return Err(Error::NotEven { index: i });
            }
        }
        let det = mat::det(&gram);
        if n > 0 && det.is_zero() {
            return Err(Error::Degenerate);
        }
        Ok(IntegralLattice { gram, det, label: None })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        IntegralLattice::new(
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(),
        )
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &IntMat {
        &self.gram
    }

    /// Signed determinant of the Gram matrix.
    pub fn det(&self) -> &BigInt {
        &self.det
    }

    pub fn det_abs(&self) -> BigInt {
        self.det.abs()
    }

    pub fn is_unimodular(&self) -> bool {
        self.det_abs().is_one()
    }

    /// Inertia (positive, negative); there is no radical part.
    pub fn signature(&self) -> (usize, usize) {
        let (p, n, z) = mat::signature(&self.gram);
        debug_assert_eq!(z, 0);
        (p, n)
    }

    fn check_vector(&self, v: &[BigInt]) -> Result<()> {
        if v.len() != self.rank() {
            return Err(Error::LengthMismatch { expected: self.rank(), found: v.len() });
        }
        Ok(())
    }

    pub fn pairing(&self, u: &[BigInt], v: &[BigInt]) -> Result<BigInt> {
        self.check_vector(u)?;
        self.check_vector(v)?;
        let gv = self.gram.mul_vec(v);
        Ok(u.iter().zip(&gv).map(|(a, b)| a * b).sum())
    }

    pub fn square(&self, v: &[BigInt]) -> Result<BigInt> {
        self.pairing(v, v)
    }

    /// Pairings of `v` with the basis vectors, i.e. `gram · v`.
    pub fn basis_pairings(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        self.check_vector(v)?;
        Ok(self.gram.mul_vec(v))
    }

    /// gcd of the pairings of `v` with the whole lattice.
    pub fn divisibility(&self, v: &[BigInt]) -> Result<BigInt> {
        self.check_vector(v)?;
        if v.iter().all(|x| x.is_zero()) {
            return Err(Error::ZeroVector);
        }
        Ok(mat::gcd_all(&self.gram.mul_vec(v)))
    }

    /// A nonzero vector is primitive iff its coordinates are coprime.
    pub fn is_primitive(&self, v: &[BigInt]) -> Result<bool> {
        self.check_vector(v)?;
        if v.iter().all(|x| x.is_zero()) {
            return Err(Error::ZeroVector);
        }
        Ok(mat::gcd_all(v).is_one())
    }

    pub fn direct_sum(&self, other: &IntegralLattice) -> IntegralLattice {
        let gram = self.gram.direct_sum(&other.gram);
        let det = &self.det * &other.det;
        let label = match (&self.label, &other.label) {
            (Some(a), Some(b)) => Some(format!("{a} + {b}")),
            _ => None,
        };
        IntegralLattice { gram, det, label }
    }

    /// Entrywise scaling of the form; `L(k)` in lattice notation.
    pub fn rescale(&self, k: &BigInt) -> Result<IntegralLattice> {
        if k.is_zero() {
            return Err(Error::ZeroScale);
        }
        let gram = self.gram.scale(k);
        let mut power = BigInt::one();
        for _ in 0..self.rank() {
            power *= k;
        }
        let label = self.label.as_ref().map(|l| format!("{l}({k})"));
        Ok(IntegralLattice { gram, det: &self.det * power, label })
    }

    /// Primitive embedding into a direct sum of `rank` hyperbolic planes.
    /// The i-th basis vector maps to `e_i + sum_{j<i} gram[i][j]·f_j +
    /// (gram[i][i]/2)·f_i`; the ambient coordinates are ordered
    /// `(e_0, f_0, e_1, f_1, ...)`. Returns the ambient lattice and the
    /// images of the basis vectors.
    pub fn hyperbolic_envelope(&self) -> (IntegralLattice, Vec<Vec<BigInt>>) {
        let n = self.rank();
        let mut ambient = standard::u();
        if n == 0 {
            return (IntegralLattice::new(Vec::new()).unwrap(), Vec::new());
        }
        for _ in 1..n {
            ambient = ambient.direct_sum(&standard::u());
        }
        let two = BigInt::from(2);
        let images = (0..n)
            .map(|i| {
                let mut w = vec![BigInt::zero(); 2 * n];
                w[2 * i] = BigInt::one();
                for j in 0..i {
                    w[2 * j + 1] = self.gram.at(i, j).clone();
                }
                w[2 * i + 1] = self.gram.at(i, i) / &two;
                w
            })
            .collect();
        (ambient, images)
    }
}

/// Named lattices used throughout: the hyperbolic plane, E8 and its
/// negation, rank-one lattices, and the K3-flavoured sums.
pub mod standard {
    use super::*;

    /// Hyperbolic plane `U`, Gram [[0,1],[1,0]].
    pub fn u() -> IntegralLattice {
        IntegralLattice::from_i64(&[&[0, 1], &[1, 0]]).unwrap().with_label("U")
    }

    /// `U(k)` for nonzero k.
    pub fn u_scaled(k: i64) -> Result<IntegralLattice> {
        u().rescale(&BigInt::from(k))
    }

    /// The even unimodular positive-definite lattice of rank 8.
    pub fn e8() -> IntegralLattice {
        IntegralLattice::from_i64(&[
            &[2, 0, -1, 0, 0, 0, 0, 0],
            &[0, 2, 0, -1, 0, 0, 0, 0],
            &[-1, 0, 2, -1, 0, 0, 0, 0],
            &[0, -1, -1, 2, -1, 0, 0, 0],
            &[0, 0, 0, -1, 2, -1, 0, 0],
            &[0, 0, 0, 0, -1, 2, -1, 0],
            &[0, 0, 0, 0, 0, -1, 2, -1],
            &[0, 0, 0, 0, 0, 0, -1, 2],
        ])
        .unwrap()
        .with_label("E8")
    }

    /// `E8(-1)`, negative definite.
    pub fn e8_neg() -> IntegralLattice {
        e8().rescale(&BigInt::from(-1)).unwrap().with_label("E8(-1)")
    }

    /// Rank-one lattice `<m>` generated by a vector of (even) square m.
    pub fn rank_one(m: i64) -> Result<IntegralLattice> {
        if m == 0 {
            return Err(Error::Degenerate);
        }
        if m % 2 != 0 {
            return Err(Error::BadParameter("<m> requires even m"));
        }
        Ok(IntegralLattice::from_i64(&[&[m]]).unwrap().with_label(format!("<{m}>")))
    }

    /// The K3 lattice `U^3 + E8(-1)^2`, rank 22.
    pub fn k3() -> IntegralLattice {
        u().direct_sum(&u())
            .direct_sum(&u())
            .direct_sum(&e8_neg())
            .direct_sum(&e8_neg())
            .with_label("K3")
    }

    /// The Mukai lattice `U^4 + E8(-1)^2`, rank 24.
    pub fn mukai() -> IntegralLattice {
        u().direct_sum(&k3()).with_label("Mukai")
    }

    /// `U^3 + E8(-1)^2 + <-2n-2>` for n >= 2, rank 23.
    pub fn k3n(n: i64) -> Result<IntegralLattice> {
        if n < 2 {
            return Err(Error::BadParameter("K3n requires n >= 2"));
        }
        Ok(k3()
            .direct_sum(&rank_one(-2 * n - 2)?)
            .with_label(format!("K3n({n})")))
    }
}

/// A finite-rank sublattice of an ambient lattice. The saturated basis is
/// computed at construction; the basis as given is kept for reporting.
#[derive(Clone, Debug)]
pub struct Sublattice {
    home: IntegralLattice,
    given: Vec<Vec<BigInt>>,
    basis: Vec<Vec<BigInt>>,
    gram: IntMat,
    saturation_index: BigInt,
}

impl Sublattice {
    pub fn new(home: &IntegralLattice, given: Vec<Vec<BigInt>>) -> Result<Self> {
        for v in &given {
            home.check_vector(v)?;
        }
        let k = given.len();
        let b = basis_matrix(home.rank(), &given);
        let s = mat::snf(&b);
        if s.rank() != k {
            return Err(Error::DependentBasis);
        }
        let saturation_index = s.nonzero_product();
        // column span of b equals that of left_inv · diag(d); dropping the
        // invariant factors yields the saturation. A basis that is already
        // primitive is kept as given, so coordinates stay meaningful.
        let basis: Vec<Vec<BigInt>> = if saturation_index.is_one() {
            given.clone()
        } else {
            (0..k).map(|i| s.left_inv.col(i)).collect()
        };
        let bsat = basis_matrix(home.rank(), &basis);
        let gram = bsat.transpose().mul(home.gram()).mul(&bsat);
        Ok(Sublattice { home: home.clone(), given, basis, gram, saturation_index })
    }

    /// The full lattice as a sublattice of itself.
    pub fn full(home: &IntegralLattice) -> Sublattice {
        let basis = (0..home.rank())
            .map(|i| {
                let mut v = vec![BigInt::zero(); home.rank()];
                v[i] = BigInt::one();
                v
            })
            .collect();
        Sublattice::new(home, basis).unwrap()
    }

    pub fn home(&self) -> &IntegralLattice {
        &self.home
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn given_basis(&self) -> &[Vec<BigInt>] {
        &self.given
    }

    /// Basis of the saturation (the primitive closure).
    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    /// Induced Gram matrix on the saturated basis. May be degenerate.
    pub fn gram(&self) -> &IntMat {
        &self.gram
    }

    /// Index of the given sublattice inside its saturation.
    pub fn saturation_index(&self) -> &BigInt {
        &self.saturation_index
    }

    /// Whether the basis as given already spans a primitive sublattice.
    pub fn given_is_primitive(&self) -> bool {
        self.saturation_index.is_one()
    }

    pub fn is_degenerate(&self) -> bool {
        self.rank() > 0 && mat::det(&self.gram).is_zero()
    }

    /// The saturation, as a sublattice in its own right. Idempotent.
    pub fn saturate(&self) -> Sublattice {
        Sublattice::new(&self.home, self.basis.clone()).unwrap()
    }

    /// Saturated orthogonal complement `{x : x·s = 0 for all s}`.
    pub fn orthogonal_complement(&self) -> Sublattice {
        let b = basis_matrix(self.home.rank(), &self.basis);
        let m = b.transpose().mul(self.home.gram());
        let kernel = mat::kernel_basis(&m);
        Sublattice::new(&self.home, kernel).unwrap()
    }

    /// Ambient coordinates of a vector given in the saturated basis.
    pub fn ambient_coords(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.rank() {
            return Err(Error::LengthMismatch { expected: self.rank(), found: v.len() });
        }
        Ok(basis_matrix(self.home.rank(), &self.basis).mul_vec(v))
    }

    /// Divisibility of a vector computed against the sublattice only
    /// (gcd of the pairings with the saturated basis).
    pub fn divisibility_within(&self, v: &[BigInt]) -> Result<BigInt> {
        if v.len() != self.rank() {
            return Err(Error::LengthMismatch { expected: self.rank(), found: v.len() });
        }
        if v.iter().all(|x| x.is_zero()) {
            return Err(Error::ZeroVector);
        }
        let d = mat::gcd_all(&self.gram.mul_vec(v));
        if d.is_zero() {
            return Err(Error::DegenerateSublattice);
        }
        Ok(d)
    }
}

fn basis_matrix(ambient_rank: usize, vectors: &[Vec<BigInt>]) -> IntMat {
    let mut b = IntMat::zero(ambient_rank, vectors.len());
    for (j, v) in vectors.iter().enumerate() {
        for (i, x) in v.iter().enumerate() {
            *b.at_mut(i, j) = x.clone();
        }
    }
    b
}

/// Outcome of the discriminant glue construction for a primitive
/// sublattice `N` of a unimodular lattice, with `T = N^perp`.
#[derive(Clone, Debug)]
pub struct GlueReport {
    /// Discriminant form of the (saturated) sublattice.
    pub sub_form: FiniteQuadraticForm,
    /// Discriminant form of the orthogonal complement.
    pub comp_form: FiniteQuadraticForm,
    /// The saturated sublattice the check ran on.
    pub sublattice: Sublattice,
    /// The orthogonal complement itself.
    pub complement: Sublattice,
    /// Image in `A_N` of each generator of `A_T` under the glue map.
    pub images: Vec<DiscElement>,
    /// `|A_N| = |A_T|`.
    pub orders_match: bool,
    /// The glue map is a group isomorphism negating the quadratic form.
    pub anti_isometric: bool,
}

impl GlueReport {
    pub fn verified(&self) -> bool {
        self.orders_match && self.anti_isometric
    }
}

/// Builds the glue bijection `A_T -> A_N` for a primitive sublattice of a
/// unimodular lattice and verifies that it negates the finite quadratic
/// form. For each generator of `A_T` represented by a rational `lambda` in
/// `T ⊗ Q`, solves for an integral `x` with `x·z = lambda·z` for all `z` in
/// `T` (possible by unimodularity) and maps the generator to the class of
/// `x - lambda` in `A_N`.
pub fn glue_check(home: &IntegralLattice, n_basis: Vec<Vec<BigInt>>) -> Result<GlueReport> {
    if !home.is_unimodular() {
        return Err(Error::NotUnimodular);
    }
    let n = Sublattice::new(home, n_basis)?;
    if n.is_degenerate() {
        return Err(Error::DegenerateSublattice);
    }
    let t = n.orthogonal_complement();
    let n_lat = IntegralLattice::new(n.gram().to_rows())?;
    let t_lat = IntegralLattice::new(t.gram().to_rows()).map_err(|e| match e {
        Error::Degenerate => Error::DegenerateSublattice,
        other => other,
    })?;
    let sub_form = discform::discriminant_form(&n_lat);
    let comp_form = discform::discriminant_form(&t_lat);

    let b_n = basis_matrix(home.rank(), n.basis());
    let b_t = basis_matrix(home.rank(), t.basis());
    let restrict_t = b_t.transpose().mul(home.gram());

    let mut images = Vec::new();
    for gen in comp_form.generators() {
        // pairings of the generator with the basis of T, integral because
        // the generator lies in the dual of T
        let rhs: Vec<BigInt> = t_lat
            .gram()
            .mul_vec_rational(gen)
            .into_iter()
            .map(|x| {
                debug_assert!(x.is_integer());
                x.to_integer()
            })
            .collect();
        let x = mat::solve_integer(&restrict_t, &rhs)
            .expect("unimodular ambient surjects onto the dual of a primitive sublattice");
        // x - lambda lies in N ⊗ Q; express it in the basis of N
        let lambda_amb = mul_mat_rational(&b_t, gen);
        let diff: Vec<BigRational> = x
            .iter()
            .zip(&lambda_amb)
            .map(|(a, b)| BigRational::from(a.clone()) - b)
            .collect();
        let in_n = mat::solve_rational(&b_n, &diff)
            .expect("x - lambda must lie in the span of the sublattice");
        images.push(sub_form.element_of(&in_n)?);
    }

    let orders_match = sub_form.order() == comp_form.order();
    let anti_isometric =
        discform::forms_anti_isometric_elementwise(&comp_form, &sub_form, &images)?;
    Ok(GlueReport {
        sub_form,
        comp_form,
        sublattice: n,
        complement: t,
        images,
        orders_match,
        anti_isometric,
    })
}

fn mul_mat_rational(m: &IntMat, v: &[BigRational]) -> Vec<BigRational> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| BigRational::from(m.at(i, j).clone()) * &v[j]).sum())
        .collect()
}

/// Outcome of the congruence-cokernel computation for a primitive vector
/// of a primitive sublattice of a unimodular lattice.
#[derive(Clone, Debug)]
pub struct CokernelReport {
    /// Divisibility of the vector within the sublattice.
    pub divisibility: BigInt,
    /// Index of `{x in L : x·v = 0 mod d}/N` inside `L/N`.
    pub index: BigInt,
    /// Ambient vector `u` with `u·v = 1`.
    pub witness: Vec<BigInt>,
    /// `index == divisibility`.
    pub matches: bool,
}

/// For a primitive vector `v` of a primitive sublattice `N` of a unimodular
/// lattice `L`, computes `d = div_N(v)`, the index in `L/N` of the subgroup
/// of classes pairing to `0 mod d` with `v`, and a witness `u` with
/// `u·v = 1`. The index always equals `d`; the report records the check.
pub fn transcendental_cokernel(
    home: &IntegralLattice,
    n_basis: Vec<Vec<BigInt>>,
    v_in_n: &[BigInt],
) -> Result<CokernelReport> {
    if !home.is_unimodular() {
        return Err(Error::NotUnimodular);
    }
    let n = Sublattice::new(home, n_basis)?;
    if !n.given_is_primitive() {
        return Err(Error::NotPrimitiveSublattice);
    }
    if v_in_n.len() != n.rank() {
        return Err(Error::LengthMismatch { expected: n.rank(), found: v_in_n.len() });
    }
    if v_in_n.iter().all(|x| x.is_zero()) {
        return Err(Error::ZeroVector);
    }
    if !mat::gcd_all(v_in_n).is_one() {
        return Err(Error::NotPrimitiveVector("the sublattice"));
    }
    let d = n.divisibility_within(v_in_n)?;

    let v_amb = n.ambient_coords(v_in_n)?;
    let w = home.basis_pairings(&v_amb)?;
    let rank = home.rank();

    // u with w·u = 1 exists because v is primitive in the unimodular ambient
    let w_row = IntMat::from_rows(vec![w.clone()]);
    let sw = mat::snf(&w_row);
    debug_assert!(sw.d[0].is_one());
    let mut witness = sw.right.col(0);
    let pair: BigInt = w.iter().zip(&witness).map(|(a, b)| a * b).sum();
    if pair.is_negative() {
        for x in &mut witness {
            *x = -x.clone();
        }
    }
    debug_assert_eq!(
        w.iter().zip(&witness).map(|(a, b)| a * b).sum::<BigInt>(),
        BigInt::one()
    );

    // basis of S = {x : w·x = 0 mod d}: columns of R scaled by d in the
    // first slot, where w·R = (1, 0, ..., 0)
    let mut s_cols: Vec<Vec<BigInt>> = (0..rank).map(|j| sw.right.col(j)).collect();
    for x in &mut s_cols[0] {
        *x *= &d;
    }
    // first route: [Z^n : S] equals the determinant of the S basis
    let s_mat = basis_matrix(rank, &s_cols);
    let direct_index = mat::det(&s_mat).abs();

    // second route: project to L/N and take the cokernel there
    let b_n = basis_matrix(rank, n.basis());
    let sn = mat::snf(&b_n);
    debug_assert!(sn.d.iter().all(|x| x.is_one()));
    let k = n.rank();
    let mut proj_rows: Vec<Vec<BigInt>> = Vec::new();
    for i in k..rank {
        proj_rows.push(sn.left.row(i).to_vec());
    }
    let proj = IntMat::from_rows(proj_rows);
    let projected = proj.mul(&s_mat);
    let sp = mat::snf(&projected);
    debug_assert_eq!(sp.rank(), rank - k, "congruence subgroup has finite index");
    let index = sp.nonzero_product();
    debug_assert_eq!(direct_index, index);

    let matches = index == d;
    Ok(CokernelReport { divisibility: d, index, witness, matches })
}
