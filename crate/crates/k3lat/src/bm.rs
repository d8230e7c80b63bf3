//! Beauville–Mukai systems: the relative Picard varieties of a complete
//! linear system on a K3 surface, seen through their Mukai vectors
//! `v_d = (0, H, d+1-g)`. This module computes torsor classes, the cyclic
//! kernel of the Tate–Shafarevich surjection onto the Brauer group of each
//! system, the exponent bookkeeping of obstruction images, and the full
//! birationality criterion over elliptic K3 surfaces with a section.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::discform::{DiscElement, FiniteQuadraticForm};
use crate::error::{Error, Result};
use crate::lattice::IntegralLattice;
use crate::mukai::{self, K3Model, MukaiVector};

/// gcd with the convention gcd(x, 0) = |x|.
fn gcd_bi(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

/// Outcome of the bounded search for an isotropic class of divisibility 1.
/// The search never reports a definitive "no": an exhausted box is only
/// inconclusive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SectionSearch {
    Witness(Vec<BigInt>),
    Inconclusive { note: String },
}

/// Advance `coords` to the next tuple of `[lo, hi]^n` in descending
/// lexicographic order; `false` once exhausted.
fn step_desc(coords: &mut [i64], lo: i64, hi: i64) -> bool {
    let mut i = coords.len();
    loop {
        if i == 0 {
            return false;
        }
        i -= 1;
        if coords[i] > lo {
            coords[i] -= 1;
            for c in coords[i + 1..].iter_mut() {
                *c = hi;
            }
            return true;
        }
    }
}

/// Advance `coords` to the next tuple of `[lo, hi]^n` in ascending
/// lexicographic order; `false` once exhausted.
fn step_asc(coords: &mut [i64], lo: i64, hi: i64) -> bool {
    let mut i = coords.len();
    loop {
        if i == 0 {
            return false;
        }
        i -= 1;
        if coords[i] < hi {
            coords[i] += 1;
            for c in coords[i + 1..].iter_mut() {
                *c = lo;
            }
            return true;
        }
    }
}

/// Bounded search for a primitive `F` with `F^2 = 0` and divisibility 1,
/// which witnesses an elliptic fibration with a section (equivalently an
/// embedding of the hyperbolic plane into the Néron–Severi lattice).
/// Candidates are scanned shell by shell in the max norm, in descending
/// lexicographic order within each shell, so enlarging the bound only
/// extends the search.
pub fn elliptic_with_section(ns: &IntegralLattice, bound: i64) -> SectionSearch {
    let rank = ns.rank();
    if rank > 0 {
        for shell in 1..=bound {
            let mut coords = vec![shell; rank];
            loop {
                if coords.iter().any(|&c| c.abs() == shell) {
                    let v: Vec<BigInt> = coords.iter().map(|&x| BigInt::from(x)).collect();
                    if ns.square(&v).unwrap().is_zero()
                        && ns.is_primitive(&v).unwrap()
                        && ns.divisibility(&v).unwrap().is_one()
                    {
                        return SectionSearch::Witness(v);
                    }
                }
                if !step_desc(&mut coords, -shell, shell) {
                    break;
                }
            }
        }
    }
    inconclusive(ns, bound)
}

fn inconclusive(ns: &IntegralLattice, bound: i64) -> SectionSearch {
    let (pos, neg) = ns.signature();
    let note = if pos == 0 || neg == 0 {
        format!(
            "no isotropic vector of divisibility 1 in the box [-{bound}, {bound}]; the lattice is definite, so none exists at any bound"
        )
    } else {
        format!("no isotropic vector of divisibility 1 in the box [-{bound}, {bound}]")
    };
    SectionSearch::Inconclusive { note }
}

/// A fixed K3 surface together with a primitive curve class `H` of positive
/// even square `2g - 2`. Carries the divisibility of `H` and, when the
/// bounded search finds one, an elliptic-section witness.
#[derive(Clone, Debug)]
pub struct BmConfig {
    model: K3Model,
    h: Vec<BigInt>,
    genus: BigInt,
    div_h: BigInt,
    section_witness: Option<Vec<BigInt>>,
    witness_bound: i64,
}

impl BmConfig {
    pub fn new(model: K3Model, h: Vec<BigInt>, witness_bound: i64) -> Result<Self> {
        if !model.ns().is_primitive(&h)? {
            return Err(Error::BadPolarisation("curve class must be primitive"));
        }
        let h_sq = model.ns().square(&h)?;
        if !h_sq.is_positive() {
            return Err(Error::BadPolarisation("curve class must have positive square"));
        }
        let genus = &h_sq / BigInt::from(2) + BigInt::one();
        // divisibility computed in NS agrees with the one in N(S): the
        // hyperbolic summand pairs trivially with NS
        let div_h = model.ns().divisibility(&h)?;
        let mut ext_coords = vec![BigInt::zero()];
        ext_coords.extend(h.iter().cloned());
        ext_coords.push(BigInt::zero());
        let div_ext = model.extended_ns().divisibility(&ext_coords)?;
        assert_eq!(div_h, div_ext, "div(H) must agree in NS and N(S)");
        debug_assert!(h_sq.mod_floor(&div_h).is_zero());
        let section_witness = match elliptic_with_section(model.ns(), witness_bound) {
            SectionSearch::Witness(f) => Some(f),
            SectionSearch::Inconclusive { .. } => None,
        };
        Ok(BmConfig { model, h, genus, div_h, section_witness, witness_bound })
    }

    pub fn model(&self) -> &K3Model {
        &self.model
    }

    pub fn h(&self) -> &[BigInt] {
        &self.h
    }

    pub fn genus(&self) -> &BigInt {
        &self.genus
    }

    pub fn div_h(&self) -> &BigInt {
        &self.div_h
    }

    pub fn section_witness(&self) -> Option<&[BigInt]> {
        self.section_witness.as_deref()
    }

    pub fn witness_bound(&self) -> i64 {
        self.witness_bound
    }

    /// Discriminant form of the Néron–Severi lattice (not of `N(S)`).
    pub fn ns_disc_form(&self) -> FiniteQuadraticForm {
        crate::discform::discriminant_form(self.model.ns())
    }

    /// `v_d = (0, H, d+1-g)`.
    pub fn v_d(&self, d: &BigInt) -> MukaiVector {
        MukaiVector::new(
            BigInt::zero(),
            self.h.clone(),
            d + BigInt::one() - &self.genus,
        )
    }

    /// `div(v_d) = gcd(div(H), d+1-g)`, cross-checked against the Gram
    /// computation in `N(S)`.
    pub fn div_vd(&self, d: &BigInt) -> BigInt {
        let chi = d + BigInt::one() - &self.genus;
        let by_gcd = gcd_bi(&self.div_h, &chi);
        let by_gram = self
            .model
            .extended_ns()
            .divisibility(&self.v_d(d).coords())
            .expect("v_d is nonzero");
        assert_eq!(by_gcd, by_gram, "gcd formula must match the Gram computation");
        by_gcd
    }

    /// Order of the kernel of the Tate–Shafarevich surjection onto
    /// `Br(Pic^d)`: `div(H) / gcd(div(H), d+1-g)`.
    pub fn sha_kernel_order(&self, d: &BigInt) -> BigInt {
        &self.div_h / self.div_vd(d)
    }

    /// `zeta_H` on a dual vector of NS given by rational coordinates:
    /// the pairing with `H`, reduced modulo `div(H)` into `[0, div(H))`.
    /// Well-definedness on classes is asserted by recomputing with a
    /// representative shifted by a lattice vector.
    pub fn zeta_dual(&self, a: &[BigRational]) -> Result<BigInt> {
        let gram = self.model.ns().gram();
        if a.len() != self.model.ns().rank() {
            return Err(Error::LengthMismatch {
                expected: self.model.ns().rank(),
                found: a.len(),
            });
        }
        for x in gram.mul_vec_rational(a) {
            if !x.is_integer() {
                return Err(Error::NotDualVector);
            }
        }
        let value = self.pair_with_h(a);
        let mut shifted = a.to_vec();
        shifted[0] += BigRational::one();
        assert_eq!(value, self.pair_with_h(&shifted), "zeta_H must not depend on the representative");
        Ok(value)
    }

    fn pair_with_h(&self, a: &[BigRational]) -> BigInt {
        let gram = self.model.ns().gram();
        let gh = gram.mul_vec(&self.h);
        let total: BigRational =
            a.iter().zip(&gh).map(|(x, y)| x * BigRational::from(y.clone())).sum();
        debug_assert!(total.is_integer());
        total.to_integer().mod_floor(&self.div_h)
    }

    /// `zeta_H` of a class of the NS discriminant form.
    pub fn zeta(&self, form: &FiniteQuadraticForm, a: &DiscElement) -> BigInt {
        self.zeta_dual(&form.representative(a)).expect("representatives are dual vectors")
    }

    /// Bounded lexicographic search for a divisor `D` with
    /// `div(D) = D·H > 0`. Coefficients scan `[-bound, bound]^rank` in
    /// ascending lexicographic order; the first hit is returned.
    pub fn find_dual_divisor(&self, bound: i64) -> Option<Vec<BigInt>> {
        let rank = self.model.ns().rank();
        if bound <= 0 || rank == 0 {
            return None;
        }
        let mut coords = vec![-bound; rank];
        loop {
            let v: Vec<BigInt> = coords.iter().map(|&x| BigInt::from(x)).collect();
            if !v.iter().all(|x| x.is_zero()) {
                let pair_h = self.model.ns().pairing(&v, &self.h).unwrap();
                if pair_h.is_positive()
                    && self.model.ns().divisibility(&v).unwrap() == pair_h
                {
                    return Some(v);
                }
            }
            if !step_asc(&mut coords, -bound, bound) {
                return None;
            }
        }
    }

    /// The torsor class of `Pic^d` in the Tate–Shafarevich group: the
    /// residue `-d mod div(H)`, its order, and (when a dual divisor is
    /// found within the bound) an explicit representative
    /// `-d·D/div(D)` in the NS discriminant group.
    pub fn torsor_class(&self, d: &BigInt, bound: i64) -> TorsorClass {
        let zeta_value = (-d).mod_floor(&self.div_h);
        let order = &self.div_h / self.div_h.gcd(d);
        let representative = self.find_dual_divisor(bound).map(|divisor| {
            let div_d = self.model.ns().divisibility(&divisor).unwrap();
            let coords: Vec<BigRational> = divisor
                .iter()
                .map(|c| BigRational::new(-d * c, div_d.clone()))
                .collect();
            let form = self.ns_disc_form();
            let class = form.element_of(&coords).expect("-d D / div(D) is a dual vector");
            assert_eq!(
                self.zeta(&form, &class),
                zeta_value,
                "representative must evaluate to -d under zeta_H"
            );
            class
        });
        TorsorClass { d: d.clone(), zeta_value, order, representative }
    }

    /// Two systems have isomorphic generic-fibre torsors iff the degrees
    /// agree modulo `div(H)`.
    pub fn torsor_equivalent(&self, d: &BigInt, e: &BigInt) -> bool {
        (d - e).mod_floor(&self.div_h).is_zero()
    }

    /// The image of `[Pic^e]` in `Br(Pic^d)` is the `e`-th power of the
    /// obstruction class; returns the exponent `e mod div(v_d)`.
    pub fn obstruction_image_exponent(&self, d: &BigInt, e: &BigInt) -> BigInt {
        e.mod_floor(&self.div_vd(d))
    }

    /// Birationality of `Pic^d` and `Pic^e` over an elliptic K3 surface
    /// with a section: equivalent to `gcd(div(H), d+1-g) =
    /// gcd(div(H), e+1-g)`. Requires the section witness; the certificate
    /// records both gcds, both obstruction orders, and both classes
    /// `v/div(v)` in the discriminant group of `N(S)`.
    pub fn bm_birational(&self, d: &BigInt, e: &BigInt) -> Result<BirationalityReport> {
        if self.section_witness.is_none() {
            return Err(Error::MissingSectionWitness);
        }
        let div_d = self.div_vd(d);
        let div_e = self.div_vd(e);
        let class_d = mukai::caldararu_class(&self.model, &self.v_d(d))?;
        let class_e = mukai::caldararu_class(&self.model, &self.v_d(e))?;
        let birational = div_d == div_e;
        let classes_equal = class_d == class_e;
        assert_eq!(
            birational, classes_equal,
            "equal divisibility and equal classes must coincide for v_d vectors"
        );
        Ok(BirationalityReport {
            d: d.clone(),
            e: e.clone(),
            birational,
            div_d: div_d.clone(),
            div_e: div_e.clone(),
            obstruction_order_d: div_d,
            obstruction_order_e: div_e,
            class_d,
            class_e,
            classes_equal,
        })
    }
}

/// The class of a Beauville–Mukai system in the Tate–Shafarevich group.
#[derive(Clone, Debug)]
pub struct TorsorClass {
    pub d: BigInt,
    /// `-d mod div(H)`, in `[0, div(H))`.
    pub zeta_value: BigInt,
    /// Order of the class, `div(H)/gcd(div(H), d)`.
    pub order: BigInt,
    /// `-d·D/div(D)` in the NS discriminant group, when a dual divisor `D`
    /// was found within the search bound.
    pub representative: Option<DiscElement>,
}

impl TorsorClass {
    pub fn is_trivial(&self) -> bool {
        self.zeta_value.is_zero()
    }
}

/// Certificate for the birationality verdict on a pair of degrees.
#[derive(Clone, Debug)]
pub struct BirationalityReport {
    pub d: BigInt,
    pub e: BigInt,
    pub birational: bool,
    pub div_d: BigInt,
    pub div_e: BigInt,
    pub obstruction_order_d: BigInt,
    pub obstruction_order_e: BigInt,
    pub class_d: DiscElement,
    pub class_e: DiscElement,
    pub classes_equal: bool,
}

#[cfg(test)]
mod tests {
    extern crate std;

    use super::*;
    use crate::lattice::standard;

    fn rho1_config(h2: i64) -> BmConfig {
        let model =
            K3Model::new(standard::rank_one(h2).unwrap(), Some(vec![BigInt::one()])).unwrap();
        BmConfig::new(model, vec![BigInt::one()], 3).unwrap()
    }

    fn elliptic_u_config(g: i64) -> BmConfig {
        let model = K3Model::new(standard::u(), None).unwrap();
        BmConfig::new(model, vec![BigInt::one(), BigInt::from(g - 1)], 2).unwrap()
    }

    fn u_plus_minus4_config() -> BmConfig {
        let ns = standard::u().direct_sum(&standard::rank_one(-4).unwrap());
        let model = K3Model::new(ns, None).unwrap();
        BmConfig::new(model, vec![2.into(), 2.into(), 1.into()], 2).unwrap()
    }

    #[test]
    fn config_invariants() {
        let c = rho1_config(4);
        assert_eq!(c.genus(), &BigInt::from(3));
        assert_eq!(c.div_h(), &BigInt::from(4));
        assert!(c.section_witness().is_none());

        let c = elliptic_u_config(3);
        assert_eq!(c.genus(), &BigInt::from(3));
        assert_eq!(c.div_h(), &BigInt::one());
        assert_eq!(c.section_witness().unwrap(), &[BigInt::one(), BigInt::zero()]);

        let c = u_plus_minus4_config();
        assert_eq!(c.genus(), &BigInt::from(3));
        assert_eq!(c.div_h(), &BigInt::from(2));
        assert_eq!(
            c.section_witness().unwrap(),
            &[BigInt::one(), BigInt::zero(), BigInt::zero()]
        );

        // imprimitive H is rejected
        let model = K3Model::new(standard::u(), None).unwrap();
        assert_eq!(
            BmConfig::new(model, vec![2.into(), 2.into()], 2).unwrap_err(),
            Error::BadPolarisation("curve class must be primitive")
        );
    }

    #[test]
    fn v_d_values() {
        let c = rho1_config(4);
        assert_eq!(c.v_d(&2.into()), MukaiVector::from_i64(0, &[1], 0));
        assert_eq!(c.v_d(&0.into()), MukaiVector::from_i64(0, &[1], -2));
        assert_eq!(c.v_d(&3.into()), MukaiVector::from_i64(0, &[1], 1));
    }

    #[test]
    fn div_and_kernel_orders() {
        let c = rho1_config(4);
        assert_eq!(c.div_vd(&0.into()), BigInt::from(2));
        assert_eq!(c.div_vd(&2.into()), BigInt::from(4));
        assert_eq!(c.sha_kernel_order(&0.into()), BigInt::from(2));
        assert_eq!(c.sha_kernel_order(&2.into()), BigInt::one());

        let c = rho1_config(2);
        assert_eq!(c.div_vd(&0.into()), BigInt::one());

        // div(H) = 6 with d+1-g = 4
        let c = rho1_config(6);
        assert_eq!(c.genus(), &BigInt::from(4));
        assert_eq!(c.sha_kernel_order(&7.into()), BigInt::from(3));

        // order times divisibility recovers div(H)
        for d in -6..=6i64 {
            let c = rho1_config(4);
            let d = BigInt::from(d);
            assert_eq!(c.sha_kernel_order(&d) * c.div_vd(&d), BigInt::from(4));
        }
    }

    #[test]
    fn zeta_values() {
        let c = rho1_config(4);
        let form = c.ns_disc_form();
        assert_eq!(c.zeta(&form, &form.zero()), BigInt::zero());
        // H/4 pairs with H to 1
        let quarter = [BigRational::new(BigInt::one(), BigInt::from(4))];
        assert_eq!(c.zeta_dual(&quarter).unwrap(), BigInt::one());
        // -d D / div(D) evaluates to -d
        let minus_quarter = [BigRational::new(BigInt::from(-1), BigInt::from(4))];
        assert_eq!(c.zeta_dual(&minus_quarter).unwrap(), BigInt::from(3));
        assert_eq!(
            c.zeta_dual(&[BigRational::new(BigInt::one(), BigInt::from(3))]).unwrap_err(),
            Error::NotDualVector
        );
    }

    #[test]
    fn dual_divisor_search() {
        let c = rho1_config(4);
        assert_eq!(c.find_dual_divisor(3), Some(vec![BigInt::one()]));
        assert_eq!(c.find_dual_divisor(0), None);

        let c = elliptic_u_config(3);
        assert_eq!(c.find_dual_divisor(2), Some(vec![BigInt::zero(), BigInt::one()]));
    }

    #[test]
    fn torsor_classes() {
        let c = rho1_config(4);
        let t = c.torsor_class(&4.into(), 2);
        assert!(t.is_trivial());
        let t = c.torsor_class(&1.into(), 2);
        assert_eq!(t.order, BigInt::from(4));
        assert_eq!(t.zeta_value, BigInt::from(3));
        let t = c.torsor_class(&5.into(), 2);
        assert_eq!(t.zeta_value, BigInt::from(3));
        assert!(t.representative.is_some());

        assert!(c.torsor_equivalent(&0.into(), &0.into()));
        assert!(c.torsor_equivalent(&0.into(), &4.into()));
        assert!(!c.torsor_equivalent(&0.into(), &2.into()));
    }

    #[test]
    fn obstruction_exponents() {
        let c = rho1_config(4);
        // d = g-1 has div(v_d) = 4
        let d = BigInt::from(2);
        assert_eq!(c.obstruction_image_exponent(&d, &1.into()), BigInt::one());
        assert_eq!(c.obstruction_image_exponent(&d, &8.into()), BigInt::zero());
        assert_eq!(c.obstruction_image_exponent(&d, &6.into()), BigInt::from(2));
    }

    #[test]
    fn section_search_cases() {
        assert_eq!(
            elliptic_with_section(&standard::u(), 1),
            SectionSearch::Witness(vec![BigInt::one(), BigInt::zero()])
        );
        let definite = standard::rank_one(4).unwrap();
        assert!(matches!(
            elliptic_with_section(&definite, 3),
            SectionSearch::Inconclusive { .. }
        ));
        let ns = standard::u().direct_sum(&standard::rank_one(-4).unwrap());
        assert_eq!(
            elliptic_with_section(&ns, 1),
            SectionSearch::Witness(vec![BigInt::one(), BigInt::zero(), BigInt::zero()])
        );
    }

    #[test]
    fn birationality_certificates() {
        let c = u_plus_minus4_config();
        let rep = c.bm_birational(&0.into(), &0.into()).unwrap();
        assert!(rep.birational);
        let rep = c.bm_birational(&0.into(), &2.into()).unwrap();
        assert!(rep.birational);
        assert_eq!(rep.div_d, BigInt::from(2));
        assert_eq!(rep.div_e, BigInt::from(2));
        assert!(rep.classes_equal);
        let rep = c.bm_birational(&0.into(), &1.into()).unwrap();
        assert!(!rep.birational);
        assert_eq!(rep.div_e, BigInt::one());
        assert!(!rep.classes_equal);

        // no section witness on the rank-one model
        let c = rho1_config(4);
        assert_eq!(
            c.bm_birational(&0.into(), &1.into()).unwrap_err(),
            Error::MissingSectionWitness
        );
    }

    #[test]
    fn birational_without_torsor_equivalence() {
        // div(H) = 3 on U + <-6> with H = 3e + 3f + c
        let ns = standard::u().direct_sum(&standard::rank_one(-6).unwrap());
        let model = K3Model::new(ns, None).unwrap();
        let c = BmConfig::new(model, vec![3.into(), 3.into(), 1.into()], 2).unwrap();
        assert_eq!(c.div_h(), &BigInt::from(3));
        assert_eq!(c.genus(), &BigInt::from(7));
        let d = BigInt::from(1);
        let e = BigInt::from(2);
        let rep = c.bm_birational(&d, &e).unwrap();
        assert!(rep.birational);
        assert!(!c.torsor_equivalent(&d, &e));
    }
}
