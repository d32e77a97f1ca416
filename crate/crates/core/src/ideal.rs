//! Ideals of finite rings, given structurally (a canonical generator
//! datum per family) or extensionally (the sorted element set).
//!
//! Structural forms are verified arithmetically and expand without
//! enumeration; extensional forms are verified by exhaustive closure
//! checks at construction, so everything downstream may assume it is
//! holding an actual ideal.

use std::sync::Arc;

use crate::error::{Result, RingError};
use crate::poly::FpPoly;
use crate::ring::{FiniteRing, Limits, RingKind};

#[derive(Clone, Debug, PartialEq)]
pub enum StructuralIdeal {
    /// kZ/nZ; k is a divisor of n, with k = n encoding the zero ideal.
    ZmodK { n: u64, k: u64 },
    /// (g) in F_p[x]/(f) for a monic divisor g of f; g = f encodes (0).
    QuotientDivisor { g: FpPoly },
    /// Componentwise ideal of a product ring.
    Product { parts: Vec<IdealDesc> },
}

#[derive(Clone, Debug, PartialEq)]
pub enum IdealRepr {
    Structural(StructuralIdeal),
    /// Sorted, deduplicated element indices.
    Extensional(Vec<u64>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdealDesc {
    ring: Arc<FiniteRing>,
    repr: IdealRepr,
}

impl IdealDesc {
    /// The zero ideal, structural where the family has a canonical
    /// form and extensional `{0}` otherwise.
    pub fn zero(ring: &Arc<FiniteRing>) -> IdealDesc {
        let repr = match ring.kind() {
            RingKind::Zmod { n } => IdealRepr::Structural(StructuralIdeal::ZmodK { n: *n, k: *n }),
            RingKind::Quotient { modulus, .. } => IdealRepr::Structural(StructuralIdeal::QuotientDivisor {
                g: modulus.make_monic(),
            }),
            _ => IdealRepr::Extensional(vec![0]),
        };
        IdealDesc {
            ring: Arc::clone(ring),
            repr,
        }
    }

    /// kZ/nZ. Any k is accepted and canonicalized to gcd(k, n), the
    /// actual generator of the ideal; k = 0 canonicalizes to n (zero
    /// ideal).
    pub fn zmod(ring: &Arc<FiniteRing>, k: u64) -> Result<IdealDesc> {
        let n = match ring.kind() {
            RingKind::Zmod { n } => *n,
            _ => {
                return Err(RingError::IdealInvalid(
                    "zmod ideal form requires a Z/n ring".into(),
                ))
            }
        };
        let k = crate::arith::gcd(k % n, n); // gcd(0, n) = n: zero ideal
        Ok(IdealDesc {
            ring: Arc::clone(ring),
            repr: IdealRepr::Structural(StructuralIdeal::ZmodK { n, k }),
        })
    }

    /// (g) in F_p[x]/(f). g is monic-normalized and must divide f.
    pub fn quotient_divisor(ring: &Arc<FiniteRing>, g: &FpPoly) -> Result<IdealDesc> {
        let modulus = match ring.kind() {
            RingKind::Quotient { modulus, .. } => modulus,
            _ => {
                return Err(RingError::IdealInvalid(
                    "divisor ideal form requires a quotient ring".into(),
                ))
            }
        };
        if g.is_zero() {
            return Err(RingError::IdealInvalid("zero divisor polynomial".into()));
        }
        let g = g.make_monic();
        if !g.divides(modulus)? {
            return Err(RingError::IdealInvalid(format!(
                "{g} does not divide the modulus {modulus}"
            )));
        }
        Ok(IdealDesc {
            ring: Arc::clone(ring),
            repr: IdealRepr::Structural(StructuralIdeal::QuotientDivisor { g }),
        })
    }

    /// Componentwise product ideal I_1 x ... x I_k.
    pub fn product(ring: &Arc<FiniteRing>, parts: Vec<IdealDesc>) -> Result<IdealDesc> {
        let factors = match ring.kind() {
            RingKind::Product { factors } => factors,
            _ => {
                return Err(RingError::IdealInvalid(
                    "product ideal form requires a product ring".into(),
                ))
            }
        };
        if parts.len() != factors.len() {
            return Err(RingError::IdealInvalid(format!(
                "expected {} ideal components, got {}",
                factors.len(),
                parts.len()
            )));
        }
        for (part, factor) in parts.iter().zip(factors) {
            if &part.ring != factor {
                return Err(RingError::IdealInvalid(
                    "ideal component does not live in the matching factor".into(),
                ));
            }
        }
        Ok(IdealDesc {
            ring: Arc::clone(ring),
            repr: IdealRepr::Structural(StructuralIdeal::Product { parts }),
        })
    }

    /// Extensional ideal from an explicit element set; verifies 0 ∈ I,
    /// closure under addition, and absorption by every ring element.
    pub fn extensional(ring: &Arc<FiniteRing>, elems: &[u64], limits: &Limits) -> Result<IdealDesc> {
        limits.check_oracle(ring.order(), "extensional ideal verification")?;
        let mut set: Vec<u64> = elems.to_vec();
        set.sort_unstable();
        set.dedup();
        if set.iter().any(|&x| x >= ring.order()) {
            return Err(RingError::IdealInvalid(
                "element index out of range".into(),
            ));
        }
        if set.binary_search(&0).is_err() {
            return Err(RingError::IdealInvalid("ideal must contain 0".into()));
        }
        for &x in &set {
            for &y in &set {
                if set.binary_search(&ring.add_idx(x, y)).is_err() {
                    return Err(RingError::IdealInvalid(format!(
                        "not closed under addition: {x} + {y}"
                    )));
                }
            }
            for r in 0..ring.order() {
                if set.binary_search(&ring.mul_idx(x, r)).is_err() {
                    return Err(RingError::IdealInvalid(format!(
                        "does not absorb multiplication: {x} * {r}"
                    )));
                }
            }
        }
        Ok(IdealDesc {
            ring: Arc::clone(ring),
            repr: IdealRepr::Extensional(set),
        })
    }

    /// Extensional ideal that the caller has already proven closed
    /// (oracle output). Input must be sorted and deduplicated.
    pub(crate) fn extensional_unchecked(ring: &Arc<FiniteRing>, elems: Vec<u64>) -> IdealDesc {
        debug_assert!(elems.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(elems.first() == Some(&0));
        IdealDesc {
            ring: Arc::clone(ring),
            repr: IdealRepr::Extensional(elems),
        }
    }

    /// The ideal generated by the given elements: the sum of their
    /// principal ideals, closed under addition.
    pub fn generated_by(ring: &Arc<FiniteRing>, gens: &[u64], limits: &Limits) -> Result<IdealDesc> {
        limits.check_oracle(ring.order(), "ideal generation")?;
        let n = ring.order();
        if gens.iter().any(|&g| g >= n) {
            return Err(RingError::IdealInvalid(
                "generator index out of range".into(),
            ));
        }
        let mut in_set = vec![false; n as usize];
        in_set[0] = true;
        let mut members = vec![0u64];
        // seed with the principal ideals gR
        for &g in gens {
            for r in 0..n {
                let v = ring.mul_idx(g, r);
                if !in_set[v as usize] {
                    in_set[v as usize] = true;
                    members.push(v);
                }
            }
        }
        // close under addition (absorption is inherited from the seeds)
        let mut frontier = members.clone();
        while let Some(x) = frontier.pop() {
            let snapshot: Vec<u64> = members.clone();
            for y in snapshot {
                let v = ring.add_idx(x, y);
                if !in_set[v as usize] {
                    in_set[v as usize] = true;
                    members.push(v);
                    frontier.push(v);
                }
            }
        }
        members.sort_unstable();
        Ok(IdealDesc {
            ring: Arc::clone(ring),
            repr: IdealRepr::Extensional(members),
        })
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn repr(&self) -> &IdealRepr {
        &self.repr
    }

    /// Number of elements, computed without expansion.
    pub fn size(&self) -> u64 {
        match &self.repr {
            IdealRepr::Structural(s) => match s {
                StructuralIdeal::ZmodK { n, k } => n / k,
                StructuralIdeal::QuotientDivisor { g } => {
                    let (p, fdeg) = match self.ring.kind() {
                        RingKind::Quotient { p, modulus } => (*p, modulus.degree().unwrap()),
                        _ => unreachable!("verified at construction"),
                    };
                    p.pow((fdeg - g.degree().unwrap()) as u32)
                }
                StructuralIdeal::Product { parts } => parts.iter().map(|q| q.size()).product(),
            },
            IdealRepr::Extensional(v) => v.len() as u64,
        }
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.size() == 1
    }

    /// Membership test without expansion.
    pub fn contains(&self, idx: u64) -> Result<bool> {
        if idx >= self.ring.order() {
            return Err(RingError::InvalidParameter(format!(
                "index {idx} out of range for ring of order {}",
                self.ring.order()
            )));
        }
        match &self.repr {
            IdealRepr::Structural(s) => match s {
                StructuralIdeal::ZmodK { k, .. } => Ok(idx % k == 0),
                StructuralIdeal::QuotientDivisor { g } => {
                    Ok(self.ring.quotient_decode(idx)?.rem(g)?.is_zero())
                }
                StructuralIdeal::Product { parts } => {
                    let comps = self.ring.product_decode(idx)?;
                    for (c, part) in comps.iter().zip(parts) {
                        if !part.contains(*c)? {
                            return Ok(false);
                        }
                    }
                    Ok(true)
                }
            },
            IdealRepr::Extensional(v) => Ok(v.binary_search(&idx).is_ok()),
        }
    }

    /// Sorted element indices. Guarded by the expansion size, not the
    /// ring order, so small structural ideals of huge rings expand.
    pub fn expand(&self, limits: &Limits) -> Result<Vec<u64>> {
        let size = self.size();
        if size > limits.max_order {
            return Err(RingError::SizeGuard(format!(
                "ideal expansion: {size} elements exceeds cap {}",
                limits.max_order
            )));
        }
        match &self.repr {
            IdealRepr::Structural(s) => match s {
                StructuralIdeal::ZmodK { n, k } => Ok((0..n / k). map(|i| i * k).collect()),
                StructuralIdeal::QuotientDivisor { g } => {
                    let (p, modulus) = match self.ring.kind() {
                        RingKind::Quotient { p, modulus } => (*p, modulus),
                        _ => unreachable!("verified at construction"),
                    };
                    let cofactor_deg = modulus.degree().unwrap() - g.degree().unwrap();
                    let mut out = Vec::with_capacity(size as usize);
                    // multiples h·g with deg h < cofactor_deg are exactly
                    // the residues in (g)
                    for code in 0..p.pow(cofactor_deg as u32) {
                        let mut digits = Vec::with_capacity(cofactor_deg);
                        let mut c = code;
                        for _ in 0..cofactor_deg {
                            digits.push(c % p);
                            c /= p;
                        }
                        let h = FpPoly::from_reduced(p, digits);
                        let prod = h.mul(g)?;
                        out.push(self.ring.quotient_encode(&prod)?);
                    }
                    out.sort_unstable();
                    Ok(out)
                }
                StructuralIdeal::Product { parts } => {
                    let mut out = vec![0u64];
                    let mut stride = 1u64;
                    let factors = match self.ring.kind() {
                        RingKind::Product { factors } => factors,
                        _ => unreachable!("verified at construction"),
                    };
                    for (part, factor) in parts.iter().zip(factors) {
                        let sub = part.expand(limits)?;
                        let mut next = Vec::with_capacity(out.len() * sub.len());
                        for &hi in &sub {
                            for &lo in &out {
                                next.push(lo + hi * stride);
                            }
                        }
                        out = next;
                        stride *= factor.order();
                    }
                    out.sort_unstable();
                    Ok(out)
                }
            },
            IdealRepr::Extensional(v) => Ok(v.clone()),
        }
    }
}

impl std::fmt::Display for IdealDesc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.repr {
            IdealRepr::Structural(s) => match s {
                StructuralIdeal::ZmodK { n, k } => {
                    if k == n {
                        write!(f, "(0)")
                    } else if *k == 1 {
                        write!(f, "Z/{n}Z")
                    } else {
                        write!(f, "{k}Z/{n}Z")
                    }
                }
                StructuralIdeal::QuotientDivisor { g } => {
                    let modulus = match self.ring.kind() {
                        RingKind::Quotient { modulus, .. } => modulus,
                        _ => unreachable!(),
                    };
                    if g == &modulus.make_monic() {
                        write!(f, "(0)")
                    } else {
                        write!(f, "({g})")
                    }
                }
                StructuralIdeal::Product { parts } => {
                    let strs: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                    write!(f, "{}", strs.join(" x "))
                }
            },
            IdealRepr::Extensional(v) => {
                if v.len() == 1 {
                    return write!(f, "(0)");
                }
                if v.len() <= 16 {
                    let strs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                    write!(f, "{{{}}}", strs.join(", "))
                } else {
                    let head: Vec<String> = v.iter().take(8).map(|x| x.to_string()).collect();
                    write!(f, "{{{}, ...}} ({} elements)", head.join(", "), v.len())
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{make_prime_field, make_product, make_zmod};

    #[test]
    fn zmod_ideal_canonicalization_and_expansion() {
        let r = make_zmod(60).unwrap();
        let limits = Limits::default();
        let i20 = IdealDesc::zmod(&r, 20).unwrap();
        assert_eq!(i20.size(), 3);
        assert_eq!(i20.expand(&limits).unwrap(), vec![0, 20, 40]);
        assert_eq!(i20.to_string(), "20Z/60Z");

        // generator 40 gives the same ideal: gcd(40, 60) = 20
        let i40 = IdealDesc::zmod(&r, 40).unwrap();
        assert_eq!(i40, i20);

        let zero = IdealDesc::zero(&r);
        assert!(zero.is_zero_ideal());
        assert_eq!(zero.expand(&limits).unwrap(), vec![0]);
        assert_eq!(zero.to_string(), "(0)");

        let whole = IdealDesc::zmod(&r, 1).unwrap();
        assert_eq!(whole.size(), 60);
    }

    #[test]
    fn extensional_verification() {
        let r = make_zmod(6).unwrap();
        let limits = Limits::default();
        let i = IdealDesc::extensional(&r, &[0, 3], &limits).unwrap();
        assert!(i.contains(3).unwrap());
        assert!(!i.contains(2).unwrap());

        // {0, 2} in Z/6 is fine; {0, 1} is not closed
        assert!(IdealDesc::extensional(&r, &[0, 2, 4], &limits).is_ok());
        let err = IdealDesc::extensional(&r, &[0, 1], &limits).unwrap_err();
        assert!(matches!(err, RingError::IdealInvalid(_)));
        assert!(IdealDesc::extensional(&r, &[3], &limits).is_err()); // missing 0
    }

    #[test]
    fn generated_by_matches_hand_computation() {
        let r = make_zmod(6).unwrap();
        let limits = Limits::default();
        let i = IdealDesc::generated_by(&r, &[3], &limits).unwrap();
        assert_eq!(i.expand(&limits).unwrap(), vec![0, 3]);
        let j = IdealDesc::generated_by(&r, &[2, 3], &limits).unwrap();
        assert_eq!(j.size(), 6); // 2 and 3 generate everything
        let z = IdealDesc::generated_by(&r, &[], &limits).unwrap();
        assert!(z.is_zero_ideal());
    }

    #[test]
    fn product_ideal_expansion() {
        let f2 = make_prime_field(2).unwrap();
        let r = make_product(&[f2.clone(), f2.clone()]).unwrap();
        let limits = Limits::default();
        let left = IdealDesc::product(
            &r,
            vec![
                IdealDesc::generated_by(&f2, &[1], &limits).unwrap(),
                IdealDesc::zero(&f2),
            ],
        )
        .unwrap();
        // F_2 x {0} = indices {0, 1}
        assert_eq!(left.expand(&limits).unwrap(), vec![0, 1]);
        assert!(left.contains(1).unwrap());
        assert!(!left.contains(2).unwrap());
    }

    #[test]
    fn structural_ideals_reject_wrong_family() {
        let f2 = make_prime_field(2).unwrap();
        assert!(IdealDesc::zmod(&f2, 1).is_err());
    }
}
