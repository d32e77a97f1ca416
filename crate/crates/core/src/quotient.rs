//! Quotient rings F_p[x]/(f), polynomials over an arbitrary finite
//! coefficient ring, and the per-maximal-ideal reduction f ↦ f_j.
//!
//! R[x]/(f) for a non-field p-ring R is represented only through its
//! decomposition: reduce f modulo each maximal ideal of R ≅ F_p^n and
//! take the product of the component quotients F_p[x]/(f_j). This is
//! exactly the isomorphism the structure theory licenses, and it
//! avoids non-canonical residue arithmetic over non-domains.

use std::sync::Arc;

use crate::error::{Result, RingError};
use crate::hom::RingHom;
use crate::poly::FpPoly;
use crate::ring::{make_product, make_ring_from_kind, FiniteRing, Limits, RingKind};

/// F_p[x]/(f). Non-monic f is normalized monic (a unit multiple
/// generates the same ideal). Element index = little-endian base-p
/// digits of the residue polynomial.
pub fn make_quotient(p: u64, f: &FpPoly, limits: &Limits) -> Result<Arc<FiniteRing>> {
    if f.modulus() != p {
        return Err(RingError::ModulusMismatch(p, f.modulus()));
    }
    let deg = match f.degree() {
        Some(d) if d >= 1 => d,
        _ => {
            return Err(RingError::InvalidParameter(
                "quotient modulus must have degree >= 1".into(),
            ))
        }
    };
    let order = crate::arith::checked_pow(p, deg as u32)
        .ok_or_else(|| RingError::SizeGuard(format!("p^{deg} overflows u64")))?;
    limits.check_materialize(order, "quotient ring")?;
    Ok(make_ring_from_kind(
        RingKind::Quotient {
            p,
            modulus: f.make_monic(),
        },
        order,
        p,
        1,
    ))
}

/// A polynomial with coefficients in an arbitrary finite ring, stored
/// little-endian as element indices with no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyOverRing {
    ring: Arc<FiniteRing>,
    coeffs: Vec<u64>,
}

impl PolyOverRing {
    pub fn new(ring: &Arc<FiniteRing>, coeffs: &[u64]) -> Result<PolyOverRing> {
        if let Some(&bad) = coeffs.iter().find(|&&c| c >= ring.order()) {
            return Err(RingError::InvalidParameter(format!(
                "coefficient index {bad} out of range for ring of order {}",
                ring.order()
            )));
        }
        let mut coeffs = coeffs.to_vec();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Ok(PolyOverRing {
            ring: Arc::clone(ring),
            coeffs,
        })
    }

    pub fn zero(ring: &Arc<FiniteRing>) -> PolyOverRing {
        PolyOverRing {
            ring: Arc::clone(ring),
            coeffs: vec![],
        }
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check_same_ring(&self, other: &PolyOverRing) -> Result<()> {
        if self.ring != other.ring {
            return Err(RingError::RingMismatch(
                "polynomial operands have different coefficient rings".into(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &PolyOverRing) -> Result<PolyOverRing> {
        self.check_same_ring(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs: Vec<u64> = (0..n)
            .map(|i| self.ring.add_idx(self.coeff(i), other.coeff(i)))
            .collect();
        PolyOverRing::new(&self.ring, &coeffs)
    }

    pub fn mul(&self, other: &PolyOverRing) -> Result<PolyOverRing> {
        self.check_same_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(PolyOverRing::zero(&self.ring));
        }
        let mut coeffs = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = self.ring.add_idx(coeffs[i + j], self.ring.mul_idx(a, b));
            }
        }
        PolyOverRing::new(&self.ring, &coeffs)
    }

    pub fn pow(&self, k: u32) -> Result<PolyOverRing> {
        let one = PolyOverRing::new(&self.ring, &[self.ring.one_idx()])?;
        let mut acc = one;
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Substitute x ↦ x^k: spreads coefficient i to position i·k.
    pub fn compose_x_pow(&self, k: usize) -> Result<PolyOverRing> {
        if k == 0 {
            return Err(RingError::InvalidParameter("x^0 substitution".into()));
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let mut coeffs = vec![0u64; (self.coeffs.len() - 1) * k + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = a;
        }
        PolyOverRing::new(&self.ring, &coeffs)
    }
}

impl std::fmt::Display for PolyOverRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let cs = self.ring.element_string(c);
            match k {
                0 => write!(f, "{cs}")?,
                1 => write!(f, "{cs}x")?,
                _ => write!(f, "{cs}x^{k}")?,
            }
        }
        Ok(())
    }
}

/// Coefficientwise application of a projection R ↠ F_p, with leading
/// zeros stripped: the reduction f_j of f modulo a maximal ideal.
pub fn reduce_mod_maximal(f: &PolyOverRing, proj: &RingHom) -> Result<FpPoly> {
    if proj.source() != f.ring() {
        return Err(RingError::RingMismatch(
            "projection source is not the coefficient ring".into(),
        ));
    }
    let p = match proj.target().kind() {
        RingKind::PrimeField { p } => *p,
        _ => {
            return Err(RingError::InvalidParameter(
                "projection target is not a prime field".into(),
            ))
        }
    };
    if !proj.is_surjective() {
        return Err(RingError::HomInvalid("projection is not surjective".into()));
    }
    let digits: Vec<u64> = f.coeffs().iter().map(|&c| proj.apply_idx(c)).collect();
    Ok(FpPoly::from_reduced(p, digits))
}

/// The represented R[x]/(f): the product of the component quotients
/// F_p[x]/(f_j), plus the reductions that produced them (component i
/// of the product corresponds to reductions[i]).
#[derive(Clone, Debug)]
pub struct PringQuotient {
    pub ring: Arc<FiniteRing>,
    pub reductions: Vec<FpPoly>,
}

/// Builds the product of F_p[x]/(f_j) from already-computed
/// reductions. A reduction that is zero or a nonzero constant makes
/// the component degenerate (the zero ring), which the identity != 0
/// convention excludes.
pub fn assemble_quotient_product(
    p: u64,
    reductions: &[FpPoly],
    limits: &Limits,
) -> Result<PringQuotient> {
    if reductions.is_empty() {
        return Err(RingError::InvalidParameter("no reductions supplied".into()));
    }
    let mut total_order: u64 = 1;
    for (j, fj) in reductions.iter().enumerate() {
        if fj.is_zero() {
            return Err(RingError::DegenerateInput(format!(
                "reduction f_{} is zero: component ideal is (0) over a field, not a proper quotient",
                j + 1
            )));
        }
        if fj.is_constant() {
            return Err(RingError::DegenerateInput(format!(
                "reduction f_{} is a nonzero constant: component quotient collapses to the zero ring",
                j + 1
            )));
        }
        let deg = fj.degree().unwrap() as u32;
        total_order = crate::arith::checked_pow(p, deg)
            .and_then(|o| total_order.checked_mul(o))
            .ok_or_else(|| RingError::SizeGuard("quotient product order overflows u64".into()))?;
    }
    limits.check_materialize(total_order, "quotient over p-ring")?;
    let components: Vec<Arc<FiniteRing>> = reductions
        .iter()
        .map(|fj| make_quotient(p, fj, limits))
        .collect::<Result<_>>()?;
    let ring = if components.len() == 1 {
        components.into_iter().next().unwrap()
    } else {
        make_product(&components)?
    };
    Ok(PringQuotient {
        ring,
        reductions: reductions.to_vec(),
    })
}

/// R[x]/(f) for a p-ring R given through its decomposition: one
/// verified surjective projection R ↠ F_p per maximal ideal.
pub fn make_quotient_over_pring(
    r: &Arc<FiniteRing>,
    f: &PolyOverRing,
    projections: &[RingHom],
    limits: &Limits,
) -> Result<PringQuotient> {
    if f.ring() != r {
        return Err(RingError::RingMismatch(
            "polynomial is not over the given coefficient ring".into(),
        ));
    }
    if projections.is_empty() {
        return Err(RingError::InvalidParameter("no projections supplied".into()));
    }
    let mut p = 0;
    let mut reductions = Vec::with_capacity(projections.len());
    for proj in projections {
        let fj = reduce_mod_maximal(f, proj)?;
        if p == 0 {
            p = fj.modulus();
        } else if p != fj.modulus() {
            return Err(RingError::InvalidParameter(
                "projections target different prime fields".into(),
            ));
        }
        reductions.push(fj);
    }
    assemble_quotient_product(p, &reductions, limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::make_hom;
    use crate::ring::{enumerate_elements, make_prime_field, make_product, verify_ring_axioms};

    fn limits() -> Limits {
        Limits::default()
    }

    fn poly(p: u64, coeffs: &[i64]) -> FpPoly {
        FpPoly::new(p, coeffs).unwrap()
    }

    #[test]
    fn f4_is_a_field_of_order_4() {
        let q = make_quotient(2, &poly(2, &[1, 1, 1]), &limits()).unwrap();
        assert_eq!(q.order(), 4);
        assert_eq!(q.characteristic(), 2);
        verify_ring_axioms(&q, true).unwrap();
        // x · (x+1) = 1 in F_4
        assert_eq!(q.mul_idx(2, 3), 1);
        // every nonzero element has an inverse
        for a in 1..4 {
            assert!((1..4).any(|b| q.mul_idx(a, b) == 1));
        }
        let names: Vec<String> = enumerate_elements(&q).map(|e| e.to_string()).collect();
        assert_eq!(names, vec!["0", "1", "x", "x+1"]);
    }

    #[test]
    fn split_quotient_is_crt_product() {
        // F_2[x]/(x^2+x) ≅ F_2 x F_2 via g ↦ (g(0), g(1))
        let q = make_quotient(2, &poly(2, &[0, 1, 1]), &limits()).unwrap();
        assert_eq!(q.order(), 4);
        let f2 = make_prime_field(2).unwrap();
        let prod = make_product(&[f2.clone(), f2]).unwrap();
        let table: Vec<u64> = (0..4)
            .map(|i| {
                let g = q.quotient_decode(i).unwrap();
                prod.product_encode(&[g.eval(0), g.eval(1)]).unwrap()
            })
            .collect();
        let h = make_hom(&q, &prod, table).unwrap();
        assert!(h.is_bijective());
        assert!(h.unital());
    }

    #[test]
    fn linear_quotient_is_the_prime_field() {
        for p in [2u64, 3, 5] {
            for a in 0..p {
                let q = make_quotient(p, &FpPoly::linear_root(p, a), &limits()).unwrap();
                assert_eq!(q.order(), p);
                assert_eq!(q.characteristic(), p);
                let fp = make_prime_field(p).unwrap();
                // residues mod (x - a) are the constants, so the index map
                // is already the isomorphism
                let h = make_hom(&q, &fp, (0..p).collect()).unwrap();
                assert!(h.is_bijective());
            }
        }
    }

    #[test]
    fn non_monic_modulus_is_normalized() {
        let a = make_quotient(3, &poly(3, &[0, 1, 2]), &limits()).unwrap();
        let b = make_quotient(3, &poly(3, &[0, 2, 1]), &limits()).unwrap();
        // 2·(2x^2+x) = x^2+2x mod 3
        assert_eq!(a, b);
    }

    #[test]
    fn quotient_size_guard() {
        let f = FpPoly::monomial(2, 1, 13);
        assert!(make_quotient(2, &f, &limits()).unwrap_err().is_size_guard());
    }

    #[test]
    fn characteristic_is_always_p() {
        for p in [2u64, 3, 5] {
            let f = poly(p, &[1, 0, 0, 1]); // x^3 + 1
            let q = make_quotient(p, &f, &limits()).unwrap();
            assert_eq!(q.characteristic(), p);
            assert!(crate::ring::verify_characteristic(&q));
        }
    }

    #[test]
    fn reduce_mod_maximal_componentwise() {
        let f2 = make_prime_field(2).unwrap();
        let r = make_product(&[f2.clone(), f2.clone()]).unwrap();
        // f = (1,0) + (1,1)x
        let f = PolyOverRing::new(&r, &[1, 3]).unwrap();
        let proj0 = make_hom(&r, &f2, vec![0, 1, 0, 1]).unwrap();
        let proj1 = make_hom(&r, &f2, vec![0, 0, 1, 1]).unwrap();
        assert_eq!(reduce_mod_maximal(&f, &proj0).unwrap(), poly(2, &[1, 1]));
        assert_eq!(reduce_mod_maximal(&f, &proj1).unwrap(), poly(2, &[0, 1]));
        // zero maps to zero
        let z = PolyOverRing::zero(&r);
        assert!(reduce_mod_maximal(&z, &proj0).unwrap().is_zero());
        // leading coefficient can die in one component: (0,1)x + (1,1)
        let g = PolyOverRing::new(&r, &[3, 2]).unwrap();
        assert_eq!(reduce_mod_maximal(&g, &proj0).unwrap(), poly(2, &[1]));
    }

    #[test]
    fn quotient_over_pring_components() {
        let f2 = make_prime_field(2).unwrap();
        let r = make_product(&[f2.clone(), f2.clone()]).unwrap();
        let proj0 = make_hom(&r, &f2, vec![0, 1, 0, 1]).unwrap();
        let proj1 = make_hom(&r, &f2, vec![0, 0, 1, 1]).unwrap();

        // f = (1,1)x^2 + (1,1)x: both reductions are x^2+x
        let f = PolyOverRing::new(&r, &[0, 3, 3]).unwrap();
        let q = make_quotient_over_pring(&r, &f, &[proj0.clone(), proj1.clone()], &limits()).unwrap();
        assert_eq!(q.ring.order(), 16);
        assert_eq!(q.reductions, vec![poly(2, &[0, 1, 1]), poly(2, &[0, 1, 1])]);
        // the result is a 2-ring: x^2+x splits with distinct roots
        assert!((0..16).all(|x| q.ring.pow_idx(x, 2) == x && q.ring.int_mul_idx(2, x) == 0));

        // f with f_1 = x^2+x+1 irreducible: component 1 is F_4, not a 2-ring
        let g = PolyOverRing::new(&r, &[1, 3, 3]).unwrap();
        let q = make_quotient_over_pring(&r, &g, &[proj0.clone(), proj1.clone()], &limits()).unwrap();
        assert_eq!(q.reductions[0], poly(2, &[1, 1, 1]));
        assert!(!(0..q.ring.order()).all(|x| q.ring.pow_idx(x, 2) == x));

        // degenerate reductions are rejected
        let c = PolyOverRing::new(&r, &[1]).unwrap(); // (1,0): f_2 = 0
        assert!(matches!(
            make_quotient_over_pring(&r, &c, &[proj0.clone(), proj1.clone()], &limits()),
            Err(RingError::DegenerateInput(_))
        ));
        let c2 = PolyOverRing::new(&r, &[3]).unwrap(); // (1,1): constant 1 both sides
        assert!(matches!(
            make_quotient_over_pring(&r, &c2, &[proj0, proj1], &limits()),
            Err(RingError::DegenerateInput(_))
        ));
    }

    #[test]
    fn single_projection_reduces_to_plain_quotient() {
        let f2 = make_prime_field(2).unwrap();
        let id = make_hom(&f2, &f2, vec![0, 1]).unwrap();
        let f = PolyOverRing::new(&f2, &[1, 1, 1]).unwrap();
        let q = make_quotient_over_pring(&f2, &f, &[id], &limits()).unwrap();
        let direct = make_quotient(2, &poly(2, &[1, 1, 1]), &limits()).unwrap();
        assert_eq!(q.ring, direct);
    }

    #[test]
    fn frobenius_identity_in_p_rings() {
        // g(x)^p = g(x^p) for polynomials over a p-ring
        let f2 = make_prime_field(2).unwrap();
        let r = make_product(&[f2.clone(), f2]).unwrap();
        for seed in 0..16u64 {
            let coeffs: Vec<u64> = (0..3).map(|i| (seed >> (2 * i)) & 3).collect();
            let g = PolyOverRing::new(&r, &coeffs).unwrap();
            assert_eq!(g.pow(2).unwrap(), g.compose_x_pow(2).unwrap());
        }
        let f3 = make_prime_field(3).unwrap();
        for seed in 0..27u64 {
            let coeffs: Vec<u64> = vec![seed % 3, (seed / 3) % 3, (seed / 9) % 3];
            let g = PolyOverRing::new(&f3, &coeffs).unwrap();
            assert_eq!(g.pow(3).unwrap(), g.compose_x_pow(3).unwrap());
        }
    }

    #[test]
    fn poly_over_ring_display() {
        let f2 = make_prime_field(2).unwrap();
        let r = make_product(&[f2.clone(), f2]).unwrap();
        let f = PolyOverRing::new(&r, &[1, 0, 3]).unwrap();
        assert_eq!(f.to_string(), "(1,1)x^2+(1,0)");
    }
}
