//! Ring homomorphisms as extensional tables, exhaustively verified at
//! construction.
//!
//! Non-unital homomorphisms are allowed and flagged: the amalgamation
//! construction needs `a ↦ (p+1)·a₀`-style maps that send 1 elsewhere
//! than 1. Verification is quadratic in the source order, which is
//! fine at desk scale and removes a whole class of user error.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Result, RingError};
use crate::ring::{Element, FiniteRing};

#[derive(Clone, Debug, PartialEq)]
pub struct RingHom {
    source: Arc<FiniteRing>,
    target: Arc<FiniteRing>,
    table: Vec<u64>,
    unital: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum HomLaw {
    ZeroToZero,
    Additivity,
    Multiplicativity,
}

impl std::fmt::Display for HomLaw {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            HomLaw::ZeroToZero => "0 -> 0",
            HomLaw::Additivity => "h(x+y) = h(x)+h(y)",
            HomLaw::Multiplicativity => "h(xy) = h(x)h(y)",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomViolation {
    pub law: HomLaw,
    pub x: u64,
    pub y: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomReport {
    pub ok: bool,
    pub unital: bool,
    pub violation: Option<HomViolation>,
}

fn first_violation(source: &FiniteRing, target: &FiniteRing, table: &[u64]) -> Option<HomViolation> {
    if table[0] != 0 {
        return Some(HomViolation {
            law: HomLaw::ZeroToZero,
            x: 0,
            y: 0,
        });
    }
    let n = source.order();
    for x in 0..n {
        for y in 0..n {
            if table[source.add_idx(x, y) as usize] != target.add_idx(table[x as usize], table[y as usize]) {
                return Some(HomViolation {
                    law: HomLaw::Additivity,
                    x,
                    y,
                });
            }
            if table[source.mul_idx(x, y) as usize] != target.mul_idx(table[x as usize], table[y as usize]) {
                return Some(HomViolation {
                    law: HomLaw::Multiplicativity,
                    x,
                    y,
                });
            }
        }
    }
    None
}

/// Stores and eagerly verifies a homomorphism table. Rejects the
/// table with a witness pair if any law fails.
pub fn make_hom(source: &Arc<FiniteRing>, target: &Arc<FiniteRing>, table: Vec<u64>) -> Result<RingHom> {
    if table.len() as u64 != source.order() {
        return Err(RingError::HomInvalid(format!(
            "table length {} does not match source order {}",
            table.len(),
            source.order()
        )));
    }
    if let Some(&bad) = table.iter().find(|&&t| t >= target.order()) {
        return Err(RingError::HomInvalid(format!(
            "table entry {bad} out of range for target order {}",
            target.order()
        )));
    }
    if let Some(v) = first_violation(source, target, &table) {
        return Err(RingError::HomInvalid(format!(
            "law {} violated at pair ({}, {})",
            v.law, v.x, v.y
        )));
    }
    let unital = table[source.one_idx() as usize] == target.one_idx();
    Ok(RingHom {
        source: Arc::clone(source),
        target: Arc::clone(target),
        table,
        unital,
    })
}

/// Re-runs every check on an already-constructed hom.
pub fn verify_hom(h: &RingHom) -> HomReport {
    let violation = first_violation(&h.source, &h.target, &h.table);
    HomReport {
        ok: violation.is_none(),
        unital: h.unital,
        violation,
    }
}

/// The identity map on a ring.
pub fn identity_hom(ring: &Arc<FiniteRing>) -> RingHom {
    RingHom {
        source: Arc::clone(ring),
        target: Arc::clone(ring),
        table: (0..ring.order()).collect(),
        unital: true,
    }
}

/// The map a ↦ k·a₀·1_B where a₀ is the first product component of `a`
/// (or `a` itself for non-product sources), read as an integer via its
/// canonical index. This is the classic shape of a non-unital
/// hom into an amalgamation; whether it is actually a homomorphism depends on the
/// rings involved, so it goes through full verification.
pub fn scale_first_component_hom(
    source: &Arc<FiniteRing>,
    target: &Arc<FiniteRing>,
    k: i64,
) -> Result<RingHom> {
    let first_order = match source.kind() {
        crate::ring::RingKind::Product { factors } => factors[0].order(),
        _ => source.order(),
    };
    let one_t = target.one_idx();
    let table: Vec<u64> = (0..source.order())
        .map(|a| {
            let a0 = a % first_order;
            target.int_mul_idx(k.saturating_mul(a0 as i64), one_t)
        })
        .collect();
    make_hom(source, target, table)
}

impl RingHom {
    pub fn source(&self) -> &Arc<FiniteRing> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteRing> {
        &self.target
    }

    pub fn table(&self) -> &[u64] {
        &self.table
    }

    pub fn unital(&self) -> bool {
        self.unital
    }

    pub fn apply_idx(&self, x: u64) -> u64 {
        self.table[x as usize]
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        if x.ring() != &self.source {
            return Err(RingError::RingMismatch(format!(
                "hom argument lives in {}, not {}",
                x.ring().describe(),
                self.source.describe()
            )));
        }
        Element::new(&self.target, self.table[x.index() as usize])
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.order() as usize];
        for &t in &self.table {
            hit[t as usize] = true;
        }
        hit.iter().all(|&b| b)
    }

    pub fn is_bijective(&self) -> bool {
        self.source.order() == self.target.order() && self.is_surjective()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{make_prime_field, make_product, make_zmod};

    #[test]
    fn identity_on_zmod6_is_valid_and_unital() {
        let r = make_zmod(6).unwrap();
        let h = make_hom(&r, &r, (0..6).collect()).unwrap();
        assert!(h.unital());
        assert!(verify_hom(&h).ok);
        assert!(h.is_bijective());
    }

    #[test]
    fn scale0_f2sq_to_z6_is_valid_but_not_unital() {
        // h: F_2 x F_2 -> Z/6 with h(a) = 3·a0
        let f2 = make_prime_field(2).unwrap();
        let a = make_product(&[f2.clone(), f2]).unwrap();
        let b = make_zmod(6).unwrap();
        let h = scale_first_component_hom(&a, &b, 3).unwrap();
        assert!(!h.unital());
        // (0,·) -> 0, (1,·) -> 3
        assert_eq!(h.apply_idx(0), 0);
        assert_eq!(h.apply_idx(1), 3);
        assert_eq!(h.apply_idx(2), 0);
        assert_eq!(h.apply_idx(3), 3);
        // 3·3 = 9 = 3 and 3+3 = 0 mod 6 make the laws work
        assert!(verify_hom(&h).ok);
        assert!(!h.is_surjective());
    }

    #[test]
    fn one_to_zero_with_other_nonzero_output_is_rejected() {
        let r = make_zmod(6).unwrap();
        // send 1 -> 0 but keep 2 -> 2: multiplicativity breaks
        let table = vec![0, 0, 2, 0, 0, 0];
        let err = make_hom(&r, &r, table).unwrap_err();
        assert!(matches!(err, RingError::HomInvalid(_)));
        let msg = err.to_string();
        assert!(msg.contains("violated at pair"), "got: {msg}");
    }

    #[test]
    fn crt_map_z60_to_z3_x_z20() {
        let z60 = make_zmod(60).unwrap();
        let z3 = make_zmod(3).unwrap();
        let z20 = make_zmod(20).unwrap();
        let prod = make_product(&[z3, z20]).unwrap();
        let table: Vec<u64> = (0..60).map(|r| prod.product_encode(&[r % 3, r % 20]).unwrap()).collect();
        let h = make_hom(&z60, &prod, table).unwrap();
        assert!(h.unital());
        assert!(h.is_bijective());
    }

    #[test]
    fn length_and_range_validation() {
        let r = make_zmod(6).unwrap();
        assert!(make_hom(&r, &r, vec![0, 1]).is_err());
        assert!(make_hom(&r, &r, vec![0, 1, 2, 3, 4, 9]).is_err());
    }

    #[test]
    fn apply_checks_ring() {
        let r = make_zmod(6).unwrap();
        let s = make_zmod(5).unwrap();
        let h = identity_hom(&r);
        let x = Element::new(&s, 1).unwrap();
        assert!(matches!(h.apply(&x), Err(RingError::RingMismatch(_))));
    }
}
