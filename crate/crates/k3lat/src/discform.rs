//! Finite quadratic forms: the discriminant group `A_L = L*/L` of an even
//! non-degenerate lattice, with quadratic values in `Q/2Z` and pairings in
//! `Q/Z`. Values are stored as reduced fractions, normalised into `[0,2)`
//! and `[0,1)` so that equality is literal.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::IntegralLattice;
use crate::mat::{self, IntMat};

/// Reduce a rational into `[0, m)`.
fn reduce_mod(x: &BigRational, m: i64) -> BigRational {
    let m = BigRational::from(BigInt::from(m));
    let q = (x / &m).floor();
    x - q * m
}

/// An element of a finite quadratic form, as coefficients of the stored
/// generators, reduced modulo the invariant factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscElement {
    coeffs: Vec<BigInt>,
}

impl DiscElement {
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

/// The discriminant form of an even lattice: invariant factors `> 1` with
/// their divisibility chain, generators as rational coordinate tuples in
/// the lattice basis, and the exact `q`/pairing tables.
#[derive(Clone, Debug)]
pub struct FiniteQuadraticForm {
    invariant_factors: Vec<BigInt>,
    generators: Vec<Vec<BigRational>>,
    q: Vec<BigRational>,
    pairing: Vec<Vec<BigRational>>,
    order: BigInt,
    home_gram: IntMat,
    reduce: IntMat,
    full_factors: Vec<BigInt>,
    nontrivial: Vec<usize>,
    negated: bool,
}

/// Computes `L*/L` via the Smith normal form of the Gram matrix. With
/// `left·G·right = diag(d)`, the class group is the direct sum of
/// `Z/d_i` generated by `col_i(right)/d_i`.
pub fn discriminant_form(l: &IntegralLattice) -> FiniteQuadraticForm {
    let gram = l.gram().clone();
    let s = mat::snf(&gram);
    let full_factors = s.d.clone();
    let nontrivial: Vec<usize> =
        (0..full_factors.len()).filter(|&i| !full_factors[i].is_one()).collect();
    let generators: Vec<Vec<BigRational>> = nontrivial
        .iter()
        .map(|&i| {
            s.right
                .col(i)
                .into_iter()
                .map(|x| BigRational::new(x, full_factors[i].clone()))
                .collect()
        })
        .collect();
    let pair = |a: &[BigRational], b: &[BigRational]| -> BigRational {
        let gb = gram.mul_vec_rational(b);
        a.iter().zip(&gb).map(|(x, y)| x * y).sum()
    };
    let q: Vec<BigRational> =
        generators.iter().map(|g| reduce_mod(&pair(g, g), 2)).collect();
    let pairing: Vec<Vec<BigRational>> = generators
        .iter()
        .map(|a| generators.iter().map(|b| reduce_mod(&pair(a, b), 1)).collect())
        .collect();
    let order = full_factors.iter().product();
    FiniteQuadraticForm {
        invariant_factors: nontrivial.iter().map(|&i| full_factors[i].clone()).collect(),
        generators,
        q,
        pairing,
        order,
        home_gram: gram,
        reduce: s.left,
        full_factors,
        nontrivial,
        negated: false,
    }
}

impl FiniteQuadraticForm {
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn generators(&self) -> &[Vec<BigRational>] {
        &self.generators
    }

    /// Quadratic values of the generators, in `[0, 2)`.
    pub fn q_values(&self) -> &[BigRational] {
        &self.q
    }

    /// Pairing table of the generators, in `[0, 1)`.
    pub fn pairing_values(&self) -> &[Vec<BigRational>] {
        &self.pairing
    }

    pub fn order(&self) -> &BigInt {
        &self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }

    /// Whether this form is a formal (-1)-twist of a discriminant form.
    pub fn is_negated(&self) -> bool {
        self.negated
    }

    pub fn num_generators(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn zero(&self) -> DiscElement {
        DiscElement { coeffs: vec![BigInt::zero(); self.num_generators()] }
    }

    pub fn generator(&self, i: usize) -> DiscElement {
        let mut coeffs = vec![BigInt::zero(); self.num_generators()];
        coeffs[i] = BigInt::one();
        DiscElement { coeffs }
    }

    /// The class of a rational coordinate tuple in `L ⊗ Q`. Errors unless
    /// the tuple pairs integrally with the whole lattice.
    pub fn element_of(&self, coords: &[BigRational]) -> Result<DiscElement> {
        if coords.len() != self.home_gram.rows() {
            return Err(Error::LengthMismatch {
                expected: self.home_gram.rows(),
                found: coords.len(),
            });
        }
        let paired = self.home_gram.mul_vec_rational(coords);
        let mut integral = Vec::with_capacity(paired.len());
        for x in paired {
            if !x.is_integer() {
                return Err(Error::NotDualVector);
            }
            integral.push(x.to_integer());
        }
        let c = self.reduce.mul_vec(&integral);
        let coeffs = self
            .nontrivial
            .iter()
            .map(|&i| c[i].mod_floor(&self.full_factors[i]))
            .collect();
        Ok(DiscElement { coeffs })
    }

    /// An element from generator coefficients, reduced modulo the
    /// invariant factors.
    pub fn element_from_coeffs(&self, coeffs: Vec<BigInt>) -> Result<DiscElement> {
        if coeffs.len() != self.num_generators() {
            return Err(Error::LengthMismatch {
                expected: self.num_generators(),
                found: coeffs.len(),
            });
        }
        Ok(DiscElement {
            coeffs: coeffs
                .into_iter()
                .zip(&self.invariant_factors)
                .map(|(c, d)| c.mod_floor(d))
                .collect(),
        })
    }

    /// A rational representative in `L ⊗ Q` of the class.
    pub fn representative(&self, e: &DiscElement) -> Vec<BigRational> {
        let n = self.home_gram.rows();
        let mut out = vec![BigRational::zero(); n];
        for (c, gen) in e.coeffs.iter().zip(&self.generators) {
            for (o, g) in out.iter_mut().zip(gen) {
                *o += BigRational::from(c.clone()) * g;
            }
        }
        out
    }

    pub fn add(&self, a: &DiscElement, b: &DiscElement) -> DiscElement {
        DiscElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .zip(&self.invariant_factors)
                .map(|((x, y), d)| (x + y).mod_floor(d))
                .collect(),
        }
    }

    pub fn neg(&self, a: &DiscElement) -> DiscElement {
        DiscElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&self.invariant_factors)
                .map(|(x, d)| (-x).mod_floor(d))
                .collect(),
        }
    }

    pub fn smul(&self, k: &BigInt, a: &DiscElement) -> DiscElement {
        DiscElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&self.invariant_factors)
                .map(|(x, d)| (x * k).mod_floor(d))
                .collect(),
        }
    }

    pub fn order_of(&self, a: &DiscElement) -> BigInt {
        a.coeffs
            .iter()
            .zip(&self.invariant_factors)
            .fold(BigInt::one(), |acc, (c, d)| acc.lcm(&(d / d.gcd(c))))
    }

    /// `q` of an arbitrary element, from the generator tables:
    /// `q(sum c_i g_i) = sum c_i^2 q_i + 2 sum_{i<j} c_i c_j b_ij` mod 2.
    pub fn q_of(&self, a: &DiscElement) -> BigRational {
        let mut total = BigRational::zero();
        for (i, c) in a.coeffs.iter().enumerate() {
            total += BigRational::from(c * c) * &self.q[i];
            for (j, c2) in a.coeffs.iter().enumerate().skip(i + 1) {
                total += BigRational::from(BigInt::from(2) * c * c2) * &self.pairing[i][j];
            }
        }
        reduce_mod(&total, 2)
    }

    pub fn pairing_of(&self, a: &DiscElement, b: &DiscElement) -> BigRational {
        let mut total = BigRational::zero();
        for (i, c) in a.coeffs.iter().enumerate() {
            for (j, c2) in b.coeffs.iter().enumerate() {
                total += BigRational::from(c * c2) * &self.pairing[i][j];
            }
        }
        reduce_mod(&total, 1)
    }

    /// The same group with all `q`/pairing values negated; the `(-1)`-twist.
    pub fn negate(&self) -> FiniteQuadraticForm {
        let mut out = self.clone();
        out.q = self.q.iter().map(|x| reduce_mod(&-x, 2)).collect();
        out.pairing = self
            .pairing
            .iter()
            .map(|row| row.iter().map(|x| reduce_mod(&-x, 1)).collect())
            .collect();
        out.negated = !self.negated;
        out
    }

    /// Every element of the group. Only sensible for small orders.
    pub fn all_elements(&self) -> Vec<DiscElement> {
        let mut out = vec![self.zero()];
        for (i, d) in self.invariant_factors.iter().enumerate() {
            let mut next = Vec::new();
            let mut c = BigInt::zero();
            while &c < d {
                for e in &out {
                    let mut coeffs = e.coeffs.clone();
                    coeffs[i] = c.clone();
                    next.push(DiscElement { coeffs });
                }
                c += 1;
            }
            out = next;
        }
        out
    }
}

/// Checks whether a generator-image list defines a group isomorphism
/// `f -> g` that negates the quadratic form, i.e. `q_g(image) = -q_f(source)`
/// for all elements. Negation on generators plus negation of all pairwise
/// pairings suffices for all elements. A non-homomorphic image list is an
/// error; a homomorphic map that fails to be an isomorphism or fails to
/// negate `q` yields `false`.
pub fn forms_anti_isometric_elementwise(
    f: &FiniteQuadraticForm,
    g: &FiniteQuadraticForm,
    images: &[DiscElement],
) -> Result<bool> {
    if images.len() != f.num_generators() {
        return Err(Error::LengthMismatch {
            expected: f.num_generators(),
            found: images.len(),
        });
    }
    for img in images {
        if img.coeffs.len() != g.num_generators() {
            return Err(Error::LengthMismatch {
                expected: g.num_generators(),
                found: img.coeffs.len(),
            });
        }
    }
    // well-defined homomorphism: the i-th generator has order dividing f_i
    for (img, d) in images.iter().zip(f.invariant_factors()) {
        if !g.smul(d, img).is_zero() {
            return Err(Error::NotHomomorphic);
        }
    }
    // isomorphism: equal orders and surjectivity
    if f.order() != g.order() {
        return Ok(false);
    }
    let m = g.num_generators();
    let mut cols: Vec<Vec<BigInt>> = images.iter().map(|img| img.coeffs.clone()).collect();
    for (i, d) in g.invariant_factors().iter().enumerate() {
        let mut col = vec![BigInt::zero(); m];
        col[i] = d.clone();
        cols.push(col);
    }
    let mut rel = IntMat::zero(m, cols.len());
    for (j, col) in cols.iter().enumerate() {
        for (i, x) in col.iter().enumerate() {
            *rel.at_mut(i, j) = x.clone();
        }
    }
    let surjective = mat::snf(&rel).d.iter().take(m).all(|x| x.is_one());
    if !surjective {
        return Ok(false);
    }
    // anti-isometry on generators and pairwise pairings
    for i in 0..f.num_generators() {
        if g.q_of(&images[i]) != reduce_mod(&-&f.q_values()[i], 2) {
            return Ok(false);
        }
        for j in i + 1..f.num_generators() {
            if g.pairing_of(&images[i], &images[j])
                != reduce_mod(&-&f.pairing_values()[i][j], 1)
            {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    extern crate std;

    use super::*;
    use crate::lattice::standard;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn unimodular_forms_are_trivial() {
        let f = discriminant_form(&standard::u());
        assert!(f.is_trivial());
        assert_eq!(f.num_generators(), 0);
        let f = discriminant_form(&standard::e8_neg());
        assert!(f.is_trivial());
    }

    #[test]
    fn rank_one_forms() {
        // <-6>: Z/6 with q = -1/6 = 11/6 mod 2
        let f = discriminant_form(&standard::rank_one(-6).unwrap());
        assert_eq!(f.invariant_factors(), &[BigInt::from(6)]);
        assert_eq!(f.q_values()[0], rat(11, 6));

        // <4>: Z/4 with q = 1/4
        let f = discriminant_form(&standard::rank_one(4).unwrap());
        assert_eq!(f.invariant_factors(), &[BigInt::from(4)]);
        assert_eq!(f.q_values()[0], rat(1, 4));
    }

    #[test]
    fn element_reduction() {
        let l = standard::rank_one(4).unwrap();
        let f = discriminant_form(&l);
        // integral coordinates land on the zero class
        let e = f.element_of(&[rat(1, 1)]).unwrap();
        assert!(e.is_zero());
        // x/4 has order 4
        let e = f.element_of(&[rat(1, 4)]).unwrap();
        assert_eq!(f.order_of(&e), BigInt::from(4));
        // x/3 is not a dual vector of <4>
        assert_eq!(f.element_of(&[rat(1, 3)]).unwrap_err(), Error::NotDualVector);
    }

    #[test]
    fn element_of_on_mukai_conventions() {
        // v/div(v) for v of divisibility 4 in the rank-one H^2=4 model
        let l = IntegralLattice::from_i64(&[&[0, 0, -1], &[0, 4, 0], &[-1, 0, 0]]).unwrap();
        let f = discriminant_form(&l);
        assert_eq!(f.order(), &BigInt::from(4));
        let e = f.element_of(&[rat(0, 1), rat(1, 4), rat(0, 1)]).unwrap();
        assert_eq!(f.order_of(&e), BigInt::from(4));
    }

    #[test]
    fn scaled_hyperbolic_half_coords() {
        let l = standard::u_scaled(2).unwrap();
        let f = discriminant_form(&l);
        assert_eq!(f.order(), &BigInt::from(4));
        let e = f.element_of(&[rat(1, 2), rat(1, 2)]).unwrap();
        assert_eq!(f.order_of(&e), BigInt::from(2));
    }

    #[test]
    fn negate_flips_values() {
        let f = discriminant_form(&standard::rank_one(2).unwrap());
        assert_eq!(f.q_values()[0], rat(1, 2));
        let n = f.negate();
        assert_eq!(n.q_values()[0], rat(3, 2));
        let f = discriminant_form(&standard::rank_one(-6).unwrap());
        assert_eq!(f.negate().q_values()[0], rat(1, 6));
        let t = discriminant_form(&standard::u()).negate();
        assert!(t.is_trivial());
    }

    #[test]
    fn negation_matches_rescaled_lattice() {
        for m in [4i64, -6, 8] {
            let l = standard::rank_one(m).unwrap();
            let a = discriminant_form(&l.rescale(&BigInt::from(-1)).unwrap());
            let b = discriminant_form(&l).negate();
            assert_eq!(a.invariant_factors(), b.invariant_factors());
            assert_eq!(a.q_values(), b.q_values());
            assert_eq!(a.pairing_values(), b.pairing_values());
        }
    }

    #[test]
    fn anti_isometry_checks() {
        let trivial = discriminant_form(&standard::u());
        assert!(forms_anti_isometric_elementwise(&trivial, &trivial, &[]).unwrap());

        let half = discriminant_form(&standard::rank_one(2).unwrap());
        let minus_half = discriminant_form(&standard::rank_one(-2).unwrap());
        let gens = [half.generator(0)];
        assert!(forms_anti_isometric_elementwise(&half, &minus_half, &gens).unwrap());

        // q = 1/4 does not negate to itself
        let quarter = discriminant_form(&standard::rank_one(4).unwrap());
        let gens = [quarter.generator(0)];
        assert!(!forms_anti_isometric_elementwise(&quarter, &quarter, &gens).unwrap());

        // the doubling map on Z/4 is not an isomorphism
        let two = quarter.smul(&BigInt::from(2), &quarter.generator(0));
        assert!(!forms_anti_isometric_elementwise(&quarter, &quarter, &[two]).unwrap());

        // Z/4 -> Z/2 generator to generator is homomorphic but not bijective
        let gens = [half.generator(0)];
        assert!(!forms_anti_isometric_elementwise(&quarter, &half, &gens).unwrap());

        // Z/2 -> Z/4 generator to generator is not even a homomorphism
        let gens = [quarter.generator(0)];
        assert_eq!(
            forms_anti_isometric_elementwise(&half, &quarter, &gens).unwrap_err(),
            Error::NotHomomorphic
        );
    }

    #[test]
    fn q_is_quadratic_against_pairing() {
        // q(x+y) - q(x) - q(y) = 2 b(x,y) mod 2, exhaustively on small forms
        for l in [
            standard::rank_one(4).unwrap(),
            standard::rank_one(-6).unwrap(),
            standard::u_scaled(2).unwrap(),
            standard::rank_one(2).unwrap().direct_sum(&standard::rank_one(-8).unwrap()),
        ] {
            let f = discriminant_form(&l);
            let elements = f.all_elements();
            for x in &elements {
                for y in &elements {
                    let lhs = reduce_mod(&(f.q_of(&f.add(x, y)) - f.q_of(x) - f.q_of(y)), 2);
                    let rhs = reduce_mod(&(f.pairing_of(x, y) * BigRational::from(BigInt::from(2))), 2);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn unimodular_summand_preserves_form() {
        let a = standard::rank_one(4).unwrap();
        let b = a.direct_sum(&standard::u());
        let fa = discriminant_form(&a);
        let fb = discriminant_form(&b);
        assert_eq!(fa.invariant_factors(), fb.invariant_factors());
        assert_eq!(fa.q_values(), fb.q_values());
    }
}
