//! Dense polynomial arithmetic over the prime field F_p.
//!
//! Coefficients are stored little-endian in `[0, p)` with no trailing
//! zeros, so the zero polynomial is the empty vector and `degree()`
//! returns `None` for it rather than a sentinel integer.

use crate::arith::{self, is_prime};
use crate::error::{Result, RingError};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    /// Builds a polynomial from little-endian coefficients, reducing
    /// them mod `p`. Fails if `p` is not prime.
    pub fn new(p: u64, coeffs: &[i64]) -> Result<Self> {
        if !is_prime(p) {
            return Err(RingError::InvalidParameter(format!("{p} is not prime")));
        }
        let reduced = coeffs
            .iter()
            .map(|&c| c.rem_euclid(p as i64) as u64)
            .collect();
        Ok(Self::from_reduced(p, reduced))
    }

    pub(crate) fn from_reduced(p: u64, mut coeffs: Vec<u64>) -> Self {
        debug_assert!(coeffs.iter().all(|&c| c < p));
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: vec![] }
    }

    pub fn one(p: u64) -> Self {
        Self::constant(p, 1)
    }

    pub fn constant(p: u64, c: u64) -> Self {
        Self::from_reduced(p, vec![c % p])
    }

    /// The monomial x.
    pub fn x(p: u64) -> Self {
        Self::from_reduced(p, vec![0, 1])
    }

    /// c * x^k.
    pub fn monomial(p: u64, c: u64, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c % p;
        Self::from_reduced(p, coeffs)
    }

    /// x - a.
    pub fn linear_root(p: u64, a: u64) -> Self {
        Self::from_reduced(p, vec![(p - a % p) % p, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    /// Degree, or `None` for the zero polynomial.
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

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == 1
    }

    fn check_same_p(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(RingError::ModulusMismatch(self.p, other.p));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_p(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| (self.coeff(i) + other.coeff(i)) % self.p)
            .collect();
        Ok(Self::from_reduced(self.p, coeffs))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_p(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| (self.coeff(i) + self.p - other.coeff(i)) % self.p)
            .collect();
        Ok(Self::from_reduced(self.p, coeffs))
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|&c| (self.p - c) % self.p).collect();
        Self::from_reduced(self.p, coeffs)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_p(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.p));
        }
        let mut coeffs = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = (coeffs[i + j] + arith::mul_mod(a, b, self.p)) % self.p;
            }
        }
        Ok(Self::from_reduced(self.p, coeffs))
    }

    pub fn scale(&self, c: u64) -> Self {
        let c = c % self.p;
        let coeffs = self
            .coeffs
            .iter()
            .map(|&a| arith::mul_mod(a, c, self.p))
            .collect();
        Self::from_reduced(self.p, coeffs)
    }

    /// Long division: returns (q, r) with self = q * divisor + r and
    /// deg r < deg divisor.
    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.check_same_p(divisor)?;
        if divisor.is_zero() {
            return Err(RingError::PolyDivisionByZero);
        }
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() < divisor.coeffs.len() {
            return Ok((Self::zero(self.p), self.clone()));
        }
        let lead_inv = arith::inv_mod_prime(divisor.leading_coeff(), self.p);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - dd];
        while rem.len() >= divisor.coeffs.len() && !rem.is_empty() {
            let shift = rem.len() - 1 - dd;
            let factor = arith::mul_mod(*rem.last().unwrap(), lead_inv, self.p);
            quot[shift] = factor;
            for (i, &c) in divisor.coeffs.iter().enumerate() {
                let sub = arith::mul_mod(factor, c, self.p);
                rem[shift + i] = (rem[shift + i] + self.p - sub) % self.p;
            }
            while rem.last() == Some(&0) {
                rem.pop();
            }
        }
        Ok((
            Self::from_reduced(self.p, quot),
            Self::from_reduced(self.p, rem),
        ))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.divmod(divisor)?.1)
    }

    pub fn divides(&self, other: &Self) -> Result<bool> {
        Ok(other.rem(self)?.is_zero())
    }

    /// Formal derivative: coefficient of x^{k-1} is k * a_k mod p.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &a)| arith::mul_mod(k as u64 % self.p, a, self.p))
            .collect();
        Self::from_reduced(self.p, coeffs)
    }

    /// Horner evaluation at `a` in F_p.
    pub fn eval(&self, a: u64) -> u64 {
        let a = a % self.p;
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = (arith::mul_mod(acc, a, self.p) + c) % self.p;
        }
        acc
    }

    pub fn make_monic(&self) -> Self {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(arith::inv_mod_prime(self.leading_coeff(), self.p))
    }

    /// Monic greatest common divisor by the Euclidean algorithm.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.check_same_p(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(RingError::UndefinedGcd);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.make_monic())
    }

    /// self^exp reduced mod `modulus`, by square-and-multiply on residues.
    pub fn pow_mod(&self, exp: u64, modulus: &Self) -> Result<Self> {
        self.check_same_p(modulus)?;
        if modulus.is_constant() {
            if modulus.is_zero() {
                return Err(RingError::PolyDivisionByZero);
            }
            return Ok(Self::zero(self.p));
        }
        let mut acc = Self::one(self.p);
        let mut base = self.rem(modulus)?;
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?.rem(modulus)?;
            }
            base = base.mul(&base)?.rem(modulus)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Whether f divides x^p - x, decided as (x^p mod f) == (x mod f)
    /// without ever materializing x^p.
    pub fn divides_xp_minus_x(&self) -> Result<bool> {
        if self.is_constant() {
            return Err(RingError::InvalidParameter(
                "divides_xp_minus_x requires a nonconstant polynomial".into(),
            ));
        }
        let x = Self::x(self.p);
        let xp = x.pow_mod(self.p, self)?;
        Ok(xp == x.rem(self)?)
    }

    /// All roots in F_p with exact multiplicities, ascending by residue.
    /// Multiplicity is computed by repeated deflation by (x - a).
    pub fn roots_with_multiplicity(&self) -> Result<Vec<(u64, u32)>> {
        if self.is_constant() {
            return Err(RingError::InvalidParameter(
                "root finding requires a nonconstant polynomial".into(),
            ));
        }
        let mut out = Vec::new();
        for a in 0..self.p {
            if self.eval(a) != 0 {
                continue;
            }
            let lin = Self::linear_root(self.p, a);
            let mut mult = 0u32;
            let mut g = self.clone();
            loop {
                let (q, r) = g.divmod(&lin)?;
                if !r.is_zero() {
                    break;
                }
                mult += 1;
                g = q;
                if g.is_constant() {
                    break;
                }
            }
            // eval hit zero, so at least one deflation succeeded
            debug_assert!(mult >= 1);
            out.push((a, mult));
        }
        Ok(out)
    }

    /// Complete factorization into monic irreducibles with exponents,
    /// plus the leading coefficient. Trial division over monic
    /// candidates in canonical order; adequate at desk scale.
    pub fn factor(&self) -> Result<Factorization> {
        if self.is_constant() {
            return Err(RingError::InvalidParameter(
                "factorization requires a nonconstant polynomial".into(),
            ));
        }
        let leading = self.leading_coeff();
        let mut work = self.make_monic();
        let mut factors: Vec<(FpPoly, u32)> = Vec::new();
        while work.degree().unwrap_or(0) >= 1 {
            let divisor = smallest_monic_divisor(&work)?;
            let g = match divisor {
                Some(g) => g,
                None => work.clone(), // no divisor up to half degree: irreducible
            };
            let mut exp = 0u32;
            loop {
                let (q, r) = work.divmod(&g)?;
                if !r.is_zero() {
                    break;
                }
                exp += 1;
                work = q;
            }
            debug_assert!(exp >= 1);
            factors.push((g, exp));
        }
        factors.sort_by(|(a, _), (b, _)| canonical_poly_cmp(a, b));
        Ok(Factorization { leading, factors })
    }

    /// True iff gcd(f, f') is constant.
    pub fn is_squarefree(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(RingError::InvalidParameter("zero polynomial".into()));
        }
        if self.is_constant() {
            return Ok(true);
        }
        let d = self.derivative();
        if d.is_zero() {
            // f = g(x^p) over F_p, so f is a p-th power
            return Ok(false);
        }
        Ok(self.gcd(&d)?.is_constant())
    }
}

/// Canonical ordering used for factor lists: by degree, then by the
/// little-endian coefficient vector lexicographically.
pub fn canonical_poly_cmp(a: &FpPoly, b: &FpPoly) -> std::cmp::Ordering {
    a.coeffs
        .len()
        .cmp(&b.coeffs.len())
        .then_with(|| a.coeffs.cmp(&b.coeffs))
}

/// Smallest monic divisor of `f` with 1 <= deg <= deg f / 2 in canonical
/// order, or `None` if there is none (then `f` is irreducible).
fn smallest_monic_divisor(f: &FpPoly) -> Result<Option<FpPoly>> {
    let p = f.modulus();
    let deg = f.degree().unwrap();
    for d in 1..=deg / 2 {
        let count = (p as u128).pow(d as u32);
        let mut k = 0u128;
        while k < count {
            // digits of k, most significant first, become c_0..c_{d-1}
            let mut coeffs = vec![0u64; d + 1];
            let mut rest = k;
            for i in (0..d).rev() {
                coeffs[d - 1 - i] = (rest / (p as u128).pow(i as u32)) as u64 % p;
                rest %= (p as u128).pow(i as u32);
            }
            coeffs[d] = 1;
            let cand = FpPoly::from_reduced(p, coeffs);
            if cand.divides(f)? {
                return Ok(Some(cand));
            }
            k += 1;
        }
    }
    Ok(None)
}

/// Result of [`FpPoly::factor`]: `leading * prod(factors[i].0 ^ factors[i].1)`
/// reconstructs the input exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub leading: u64,
    pub factors: Vec<(FpPoly, u32)>,
}

impl Factorization {
    pub fn expand(&self, p: u64) -> Result<FpPoly> {
        let mut acc = FpPoly::constant(p, self.leading);
        for (f, e) in &self.factors {
            for _ in 0..*e {
                acc = acc.mul(f)?;
            }
        }
        Ok(acc)
    }
}

impl std::fmt::Display for FpPoly {
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
            match k {
                0 => write!(f, "{c}")?,
                1 if c == 1 => write!(f, "x")?,
                1 => write!(f, "{c}x")?,
                _ if c == 1 => write!(f, "x^{k}")?,
                _ => write!(f, "{c}x^{k}")?,
            }
        }
        Ok(())
    }
}
