//! The uniform finite-ring interface.
//!
//! A [`FiniteRing`] is a descriptor: family tag plus family-specific
//! parameters, with a canonical enumeration of elements as indices in
//! `[0, order)`. Index 0 is always the zero element. Arithmetic is
//! dispatched structurally; nothing is ever materialized beyond what a
//! particular family needs (quotients decode residue polynomials on
//! the fly, products decode mixed-radix tuples, and so on).

use std::sync::Arc;

use serde::Serialize;

use crate::arith;
use crate::constructions::{AmalgData, ModuleDesc};
use crate::error::{Result, RingError};
use crate::poly::FpPoly;

/// Family tag of a [`FiniteRing`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    Zmod,
    PrimeField,
    Quotient,
    Product,
    TrivialExt,
    Amalgamation,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Family::Zmod => "Z/n",
            Family::PrimeField => "GF(p)",
            Family::Quotient => "GF(p)[x]/(f)",
            Family::Product => "product",
            Family::TrivialExt => "trivial extension",
            Family::Amalgamation => "amalgamation",
        };
        f.write_str(s)
    }
}

/// Family-specific parameters. The enum is the whole descriptor;
/// `order`, `char` and the identity index are derived at construction.
#[derive(Clone, Debug, PartialEq)]
pub enum RingKind {
    Zmod { n: u64 },
    PrimeField { p: u64 },
    Quotient { p: u64, modulus: FpPoly },
    Product { factors: Vec<Arc<FiniteRing>> },
    TrivialExt { module: ModuleDesc },
    Amalgamation { data: AmalgData },
}

/// Size guards. `max_order` caps rings whose construction verifies or
/// stores per-element data (quotients, trivial extensions,
/// amalgamations); `oracle_max` caps brute-force sweeps, whose cost is
/// quadratic or worse. Pure descriptors (Z/n, GF(p), products) are
/// never guarded: structural fast paths must keep working above the
/// cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_order: u64,
    pub oracle_max: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: 4096,
            oracle_max: 256,
        }
    }
}

impl Limits {
    pub fn check_materialize(&self, order: u64, what: &str) -> Result<()> {
        if order > self.max_order {
            return Err(RingError::SizeGuard(format!(
                "{what}: order {order} exceeds materialization cap {}",
                self.max_order
            )));
        }
        Ok(())
    }

    pub fn check_oracle(&self, order: u64, what: &str) -> Result<()> {
        if order > self.oracle_max {
            return Err(RingError::SizeGuard(format!(
                "{what}: order {order} exceeds oracle cap {}",
                self.oracle_max
            )));
        }
        Ok(())
    }
}

/// Descriptor of a finite commutative ring with identity != 0.
#[derive(Debug)]
pub struct FiniteRing {
    kind: RingKind,
    order: u64,
    charac: u64,
    one: u64,
}

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        // order/char/one are functions of the kind
        self.kind == other.kind
    }
}

impl Eq for FiniteRing {}

/// Z/nZ with element index = residue. Requires n >= 2 (identity != 0).
pub fn make_zmod(n: u64) -> Result<Arc<FiniteRing>> {
    if n < 2 {
        return Err(RingError::InvalidParameter(format!(
            "Z/{n} has no identity distinct from zero; need n >= 2"
        )));
    }
    Ok(Arc::new(FiniteRing {
        kind: RingKind::Zmod { n },
        order: n,
        charac: n,
        one: 1,
    }))
}

/// The prime field F_p. Same arithmetic as Z/p but tagged as a field.
pub fn make_prime_field(p: u64) -> Result<Arc<FiniteRing>> {
    if !arith::is_prime(p) {
        return Err(RingError::InvalidParameter(format!("{p} is not prime")));
    }
    Ok(Arc::new(FiniteRing {
        kind: RingKind::PrimeField { p },
        order: p,
        charac: p,
        one: 1,
    }))
}

/// Finite product ring. Element index is the mixed-radix encoding of
/// the component indices, first factor least significant.
pub fn make_product(factors: &[Arc<FiniteRing>]) -> Result<Arc<FiniteRing>> {
    if factors.is_empty() {
        return Err(RingError::InvalidParameter(
            "product of zero rings has identity = 0".into(),
        ));
    }
    let mut order: u64 = 1;
    let mut charac: u64 = 1;
    let mut one: u64 = 0;
    let mut stride: u64 = 1;
    for f in factors {
        one += f.one * stride;
        stride = stride.checked_mul(f.order).ok_or_else(|| {
            RingError::InvalidParameter("product order overflows u64".into())
        })?;
        order = stride;
        charac = arith::lcm(charac, f.charac)
            .ok_or_else(|| RingError::InvalidParameter("product characteristic overflows u64".into()))?;
    }
    Ok(Arc::new(FiniteRing {
        kind: RingKind::Product {
            factors: factors.to_vec(),
        },
        order,
        charac,
        one,
    }))
}

pub(crate) fn make_ring_from_kind(kind: RingKind, order: u64, charac: u64, one: u64) -> Arc<FiniteRing> {
    Arc::new(FiniteRing {
        kind,
        order,
        charac,
        one,
    })
}

impl FiniteRing {
    pub fn kind(&self) -> &RingKind {
        &self.kind
    }

    pub fn family(&self) -> Family {
        match &self.kind {
            RingKind::Zmod { .. } => Family::Zmod,
            RingKind::PrimeField { .. } => Family::PrimeField,
            RingKind::Quotient { .. } => Family::Quotient,
            RingKind::Product { .. } => Family::Product,
            RingKind::TrivialExt { .. } => Family::TrivialExt,
            RingKind::Amalgamation { .. } => Family::Amalgamation,
        }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Additive order of 1.
    pub fn characteristic(&self) -> u64 {
        self.charac
    }

    pub fn zero_idx(&self) -> u64 {
        0
    }

    pub fn one_idx(&self) -> u64 {
        self.one
    }

    fn check_idx(&self, x: u64) {
        debug_assert!(x < self.order, "element index {x} out of range");
    }

    pub fn add_idx(&self, x: u64, y: u64) -> u64 {
        self.check_idx(x);
        self.check_idx(y);
        match &self.kind {
            RingKind::Zmod { n } | RingKind::PrimeField { p: n } => arith::add_mod(x, y, *n),
            RingKind::Quotient { p, modulus } => {
                let deg = modulus.degree().unwrap();
                encode_digits(&add_digit_vecs(&decode_digits(x, *p, deg), &decode_digits(y, *p, deg), *p), *p)
            }
            RingKind::Product { factors } => {
                let mut out = 0;
                let mut stride = 1;
                let (mut xr, mut yr) = (x, y);
                for f in factors {
                    let (xc, yc) = (xr % f.order, yr % f.order);
                    out += f.add_idx(xc, yc) * stride;
                    stride *= f.order;
                    xr /= f.order;
                    yr /= f.order;
                }
                out
            }
            RingKind::TrivialExt { module } => {
                let a = module.base();
                let na = a.order();
                let (a1, e1) = (x % na, x / na);
                let (a2, e2) = (y % na, y / na);
                a.add_idx(a1, a2) + na * module.add_code(e1, e2)
            }
            RingKind::Amalgamation { data } => {
                let na = data.a.order();
                let (a1, j1) = (x % na, x / na);
                let (a2, j2) = (y % na, y / na);
                let jb = data.b.add_idx(data.j_elems[j1 as usize], data.j_elems[j2 as usize]);
                let jp = data
                    .j_pos(jb)
                    .expect("ideal closure under addition was verified at construction");
                data.a.add_idx(a1, a2) + na * jp
            }
        }
    }

    pub fn neg_idx(&self, x: u64) -> u64 {
        self.check_idx(x);
        match &self.kind {
            RingKind::Zmod { n } | RingKind::PrimeField { p: n } => (n - x % n) % n,
            RingKind::Quotient { p, modulus } => {
                let deg = modulus.degree().unwrap();
                let digits: Vec<u64> = decode_digits(x, *p, deg).iter().map(|&d| (p - d) % p).collect();
                encode_digits(&digits, *p)
            }
            RingKind::Product { factors } => {
                let mut out = 0;
                let mut stride = 1;
                let mut xr = x;
                for f in factors {
                    out += f.neg_idx(xr % f.order) * stride;
                    stride *= f.order;
                    xr /= f.order;
                }
                out
            }
            RingKind::TrivialExt { module } => {
                let a = module.base();
                let na = a.order();
                a.neg_idx(x % na) + na * module.neg_code(x / na)
            }
            RingKind::Amalgamation { data } => {
                let na = data.a.order();
                let jb = data.b.neg_idx(data.j_elems[(x / na) as usize]);
                let jp = data
                    .j_pos(jb)
                    .expect("ideal closure under negation was verified at construction");
                data.a.neg_idx(x % na) + na * jp
            }
        }
    }

    pub fn sub_idx(&self, x: u64, y: u64) -> u64 {
        self.add_idx(x, self.neg_idx(y))
    }

    pub fn mul_idx(&self, x: u64, y: u64) -> u64 {
        self.check_idx(x);
        self.check_idx(y);
        match &self.kind {
            RingKind::Zmod { n } | RingKind::PrimeField { p: n } => arith::mul_mod(x, y, *n),
            RingKind::Quotient { p, modulus } => {
                let deg = modulus.degree().unwrap();
                let fx = FpPoly::from_reduced(*p, decode_digits(x, *p, deg));
                let fy = FpPoly::from_reduced(*p, decode_digits(y, *p, deg));
                let prod = fx
                    .mul(&fy)
                    .and_then(|q| q.rem(modulus))
                    .expect("same modulus by construction");
                encode_poly(&prod, *p)
            }
            RingKind::Product { factors } => {
                let mut out = 0;
                let mut stride = 1;
                let (mut xr, mut yr) = (x, y);
                for f in factors {
                    out += f.mul_idx(xr % f.order, yr % f.order) * stride;
                    stride *= f.order;
                    xr /= f.order;
                    yr /= f.order;
                }
                out
            }
            RingKind::TrivialExt { module } => {
                // (a,e)(b,f) = (ab, af + be)
                let a = module.base();
                let na = a.order();
                let (a1, e1) = (x % na, x / na);
                let (a2, e2) = (y % na, y / na);
                let e = module.add_code(module.scale_code(a1, e2), module.scale_code(a2, e1));
                a.mul_idx(a1, a2) + na * e
            }
            RingKind::Amalgamation { data } => {
                // (a1, f(a1)+j1)(a2, f(a2)+j2): the second component is
                // b1*b2 in B, and the j-part is b1*b2 - f(a1*a2).
                let na = data.a.order();
                let (a1, j1) = (x % na, x / na);
                let (a2, j2) = (y % na, y / na);
                let b1 = data.b_part(a1, j1);
                let b2 = data.b_part(a2, j2);
                let a12 = data.a.mul_idx(a1, a2);
                let prod = data.b.mul_idx(b1, b2);
                let jb = data.b.sub_idx(prod, data.hom.apply_idx(a12));
                let jp = data
                    .j_pos(jb)
                    .expect("ideal absorption was verified at construction");
                a12 + na * jp
            }
        }
    }

    /// x^k with pow(x, 0) = 1.
    pub fn pow_idx(&self, x: u64, k: u64) -> u64 {
        self.check_idx(x);
        if let RingKind::Quotient { p, modulus } = &self.kind {
            let deg = modulus.degree().unwrap();
            let fx = FpPoly::from_reduced(*p, decode_digits(x, *p, deg));
            let r = fx.pow_mod(k, modulus).expect("same modulus by construction");
            return encode_poly(&r, *p);
        }
        let mut acc = self.one;
        let mut base = x;
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_idx(acc, base);
            }
            base = self.mul_idx(base, base);
            e >>= 1;
        }
        acc
    }

    /// Sign-corrected k-fold sum k·x. Safe to reduce k mod char: in a
    /// unital ring char·y = (char·1)·y = 0 for every y.
    pub fn int_mul_idx(&self, k: i64, x: u64) -> u64 {
        self.check_idx(x);
        let mut r = k.rem_euclid(self.charac as i64) as u64;
        let mut acc = 0;
        let mut base = x;
        while r > 0 {
            if r & 1 == 1 {
                acc = self.add_idx(acc, base);
            }
            base = self.add_idx(base, base);
            r >>= 1;
        }
        acc
    }

    /// Human-readable rendering of an element, family-specific.
    pub fn element_string(&self, x: u64) -> String {
        self.check_idx(x);
        match &self.kind {
            RingKind::Zmod { .. } | RingKind::PrimeField { .. } => x.to_string(),
            RingKind::Quotient { p, modulus } => {
                let deg = modulus.degree().unwrap();
                FpPoly::from_reduced(*p, decode_digits(x, *p, deg)).to_string()
            }
            RingKind::Product { factors } => {
                let mut parts = Vec::with_capacity(factors.len());
                let mut xr = x;
                for f in factors {
                    parts.push(f.element_string(xr % f.order));
                    xr /= f.order;
                }
                format!("({})", parts.join(","))
            }
            RingKind::TrivialExt { module } => {
                let a = module.base();
                let na = a.order();
                format!(
                    "({}, {})",
                    a.element_string(x % na),
                    module.render(x / na)
                )
            }
            RingKind::Amalgamation { data } => {
                let na = data.a.order();
                let (ai, jp) = (x % na, x / na);
                format!(
                    "({}, {})",
                    data.a.element_string(ai),
                    data.b.element_string(data.b_part(ai, jp))
                )
            }
        }
    }

    /// One-line structural description (DSL-flavored, not guaranteed
    /// to reparse for table-backed constructions).
    pub fn describe(&self) -> String {
        match &self.kind {
            RingKind::Zmod { n } => format!("Z/{n}"),
            RingKind::PrimeField { p } => format!("GF({p})"),
            RingKind::Quotient { p, modulus } => format!("GF({p})[x]/({modulus})"),
            RingKind::Product { factors } => factors
                .iter()
                .map(|f| {
                    if matches!(f.kind(), RingKind::Product { .. }) {
                        format!("({})", f.describe())
                    } else {
                        f.describe()
                    }
                })
                .collect::<Vec<_>>()
                .join("*"),
            RingKind::TrivialExt { module } => {
                format!("triv({}, {})", module.base().describe(), module.shape_string())
            }
            RingKind::Amalgamation { data } => format!(
                "amalg({}, {}, |J|={})",
                data.a.describe(),
                data.b.describe(),
                data.j_elems.len()
            ),
        }
    }

    pub fn summary(&self) -> RingSummary {
        RingSummary {
            family: self.family(),
            order: self.order,
            characteristic: self.charac,
            description: self.describe(),
        }
    }

    /// Component indices of a product-ring element, first factor first.
    pub fn product_decode(&self, x: u64) -> Result<Vec<u64>> {
        self.check_idx(x);
        match &self.kind {
            RingKind::Product { factors } => {
                let mut out = Vec::with_capacity(factors.len());
                let mut xr = x;
                for f in factors {
                    out.push(xr % f.order);
                    xr /= f.order;
                }
                Ok(out)
            }
            _ => Err(RingError::InvalidParameter(
                "product_decode on a non-product ring".into(),
            )),
        }
    }

    pub fn product_encode(&self, comps: &[u64]) -> Result<u64> {
        match &self.kind {
            RingKind::Product { factors } => {
                if comps.len() != factors.len() {
                    return Err(RingError::InvalidParameter(format!(
                        "expected {} components, got {}",
                        factors.len(),
                        comps.len()
                    )));
                }
                let mut out = 0;
                let mut stride = 1;
                for (c, f) in comps.iter().zip(factors) {
                    if *c >= f.order {
                        return Err(RingError::InvalidParameter(format!(
                            "component {c} out of range for factor of order {}",
                            f.order
                        )));
                    }
                    out += c * stride;
                    stride *= f.order;
                }
                Ok(out)
            }
            _ => Err(RingError::InvalidParameter(
                "product_encode on a non-product ring".into(),
            )),
        }
    }

    /// Residue polynomial of a quotient-ring element.
    pub fn quotient_decode(&self, x: u64) -> Result<FpPoly> {
        self.check_idx(x);
        match &self.kind {
            RingKind::Quotient { p, modulus } => Ok(FpPoly::from_reduced(
                *p,
                decode_digits(x, *p, modulus.degree().unwrap()),
            )),
            _ => Err(RingError::InvalidParameter(
                "quotient_decode on a non-quotient ring".into(),
            )),
        }
    }

    /// Index of a polynomial's residue class in a quotient ring.
    pub fn quotient_encode(&self, g: &FpPoly) -> Result<u64> {
        match &self.kind {
            RingKind::Quotient { p, modulus } => {
                if g.modulus() != *p {
                    return Err(RingError::ModulusMismatch(*p, g.modulus()));
                }
                Ok(encode_poly(&g.rem(modulus)?, *p))
            }
            _ => Err(RingError::InvalidParameter(
                "quotient_encode on a non-quotient ring".into(),
            )),
        }
    }
}

/// Serializable one-line summary of a ring.
#[derive(Clone, Debug, Serialize)]
pub struct RingSummary {
    pub family: Family,
    pub order: u64,
    pub characteristic: u64,
    pub description: String,
}

fn decode_digits(x: u64, p: u64, deg: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(deg);
    let mut xr = x;
    for _ in 0..deg {
        out.push(xr % p);
        xr /= p;
    }
    debug_assert_eq!(xr, 0);
    out
}

fn add_digit_vecs(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    a.iter().zip(b).map(|(&x, &y)| (x + y) % p).collect()
}

fn encode_digits(digits: &[u64], p: u64) -> u64 {
    let mut out = 0;
    for &d in digits.iter().rev() {
        out = out * p + d;
    }
    out
}

pub(crate) fn encode_poly(g: &FpPoly, p: u64) -> u64 {
    encode_digits(g.coeffs(), p)
}

/// An element of a specific ring: the ring handle plus a canonical
/// index. Equal iff same ring and same index.
#[derive(Clone, Debug)]
pub struct Element {
    ring: Arc<FiniteRing>,
    idx: u64,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.idx == other.idx && self.ring == other.ring
    }
}

impl Eq for Element {}

impl Element {
    pub fn new(ring: &Arc<FiniteRing>, idx: u64) -> Result<Self> {
        if idx >= ring.order() {
            return Err(RingError::InvalidParameter(format!(
                "index {idx} out of range for ring of order {}",
                ring.order()
            )));
        }
        Ok(Element {
            ring: Arc::clone(ring),
            idx,
        })
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn index(&self) -> u64 {
        self.idx
    }

    fn same_ring(&self, other: &Element) -> Result<()> {
        if self.ring != other.ring {
            return Err(RingError::RingMismatch(format!(
                "operands live in different rings: {} vs {}",
                self.ring.describe(),
                other.ring.describe()
            )));
        }
        Ok(())
    }

    fn lift(&self, idx: u64) -> Element {
        Element {
            ring: Arc::clone(&self.ring),
            idx,
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.same_ring(other)?;
        Ok(self.lift(self.ring.add_idx(self.idx, other.idx)))
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.same_ring(other)?;
        Ok(self.lift(self.ring.sub_idx(self.idx, other.idx)))
    }

    pub fn mul(&self, other: &Element) -> Result<Element> {
        self.same_ring(other)?;
        Ok(self.lift(self.ring.mul_idx(self.idx, other.idx)))
    }

    pub fn neg(&self) -> Element {
        self.lift(self.ring.neg_idx(self.idx))
    }

    pub fn pow(&self, k: u64) -> Element {
        self.lift(self.ring.pow_idx(self.idx, k))
    }

    pub fn int_mul(&self, k: i64) -> Element {
        self.lift(self.ring.int_mul_idx(k, self.idx))
    }

    pub fn is_zero(&self) -> bool {
        self.idx == 0
    }

    pub fn is_one(&self) -> bool {
        self.idx == self.ring.one_idx()
    }
}

impl std::fmt::Display for Element {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.ring.element_string(self.idx))
    }
}

pub fn zero_of(ring: &Arc<FiniteRing>) -> Element {
    Element {
        ring: Arc::clone(ring),
        idx: 0,
    }
}

pub fn one_of(ring: &Arc<FiniteRing>) -> Element {
    Element {
        ring: Arc::clone(ring),
        idx: ring.one_idx(),
    }
}

/// Deterministic enumeration: indices 0..order ascending.
pub fn enumerate_elements(ring: &Arc<FiniteRing>) -> impl Iterator<Item = Element> {
    let r = Arc::clone(ring);
    (0..r.order()).map(move |idx| Element {
        ring: Arc::clone(&r),
        idx,
    })
}

/// Uniform arithmetic dispatch, mirroring the per-method API.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Mul,
    Neg,
    Pow,
    IntMul,
}

pub enum ArithArgs<'a> {
    Binary(&'a Element, &'a Element),
    Unary(&'a Element),
    Pow(&'a Element, u64),
    IntMul(i64, &'a Element),
}

pub fn ring_arith(ring: &Arc<FiniteRing>, op: RingOp, args: ArithArgs<'_>) -> Result<Element> {
    let owned = |e: &Element| -> Result<Element> {
        if e.ring() != ring {
            return Err(RingError::RingMismatch(format!(
                "argument lives in {}, not {}",
                e.ring().describe(),
                ring.describe()
            )));
        }
        Ok(e.clone())
    };
    match (op, args) {
        (RingOp::Add, ArithArgs::Binary(x, y)) => owned(x)?.add(&owned(y)?),
        (RingOp::Mul, ArithArgs::Binary(x, y)) => owned(x)?.mul(&owned(y)?),
        (RingOp::Neg, ArithArgs::Unary(x)) => Ok(owned(x)?.neg()),
        (RingOp::Pow, ArithArgs::Pow(x, k)) => Ok(owned(x)?.pow(k)),
        (RingOp::IntMul, ArithArgs::IntMul(k, x)) => Ok(owned(x)?.int_mul(k)),
        _ => Err(RingError::InvalidParameter(
            "ring_arith: argument shape does not match the operation".into(),
        )),
    }
}

/// Dense lookup tables for brute-force sweeps; built once per ring,
/// guarded by `oracle_max`.
#[derive(Debug)]
pub struct OpTables {
    pub n: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    one: u32,
}

impl OpTables {
    pub fn build(ring: &FiniteRing, limits: &Limits) -> Result<OpTables> {
        limits.check_oracle(ring.order(), "op-table build")?;
        let n = ring.order() as usize;
        let mut add = vec![0u32; n * n];
        let mut mul = vec![0u32; n * n];
        let mut neg = vec![0u32; n];
        for x in 0..n {
            neg[x] = ring.neg_idx(x as u64) as u32;
            for y in 0..=x {
                let a = ring.add_idx(x as u64, y as u64) as u32;
                let m = ring.mul_idx(x as u64, y as u64) as u32;
                add[x * n + y] = a;
                add[y * n + x] = a;
                mul[x * n + y] = m;
                mul[y * n + x] = m;
            }
        }
        Ok(OpTables {
            n,
            add,
            mul,
            neg,
            one: ring.one_idx() as u32,
        })
    }

    #[inline]
    pub fn add(&self, x: u32, y: u32) -> u32 {
        self.add[x as usize * self.n + y as usize]
    }

    #[inline]
    pub fn mul(&self, x: u32, y: u32) -> u32 {
        self.mul[x as usize * self.n + y as usize]
    }

    #[inline]
    pub fn neg(&self, x: u32) -> u32 {
        self.neg[x as usize]
    }

    #[inline]
    pub fn one(&self) -> u32 {
        self.one
    }

    pub fn pow(&self, x: u32, k: u64) -> u32 {
        let mut acc = self.one;
        let mut base = x;
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn int_mul(&self, k: u64, x: u32) -> u32 {
        let mut acc = 0;
        let mut base = x;
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            e >>= 1;
        }
        acc
    }
}

/// Exhaustive commutative-ring-axiom check. Pairwise laws are checked
/// on all pairs; associativity and distributivity on all triples, so
/// keep the order small (tests use rings of order <= 16 for the cubic
/// part). Returns the first violated law.
pub fn verify_ring_axioms(ring: &FiniteRing, cubic: bool) -> std::result::Result<(), String> {
    let n = ring.order();
    let one = ring.one_idx();
    if one == 0 {
        return Err("identity equals zero".into());
    }
    for x in 0..n {
        if ring.add_idx(x, 0) != x {
            return Err(format!("0 not neutral at {x}"));
        }
        if ring.mul_idx(x, one) != x {
            return Err(format!("1 not neutral at {x}"));
        }
        if ring.add_idx(x, ring.neg_idx(x)) != 0 {
            return Err(format!("no additive inverse at {x}"));
        }
        for y in 0..n {
            if ring.add_idx(x, y) != ring.add_idx(y, x) {
                return Err(format!("addition not commutative at ({x},{y})"));
            }
            if ring.mul_idx(x, y) != ring.mul_idx(y, x) {
                return Err(format!("multiplication not commutative at ({x},{y})"));
            }
        }
    }
    if cubic {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if ring.add_idx(ring.add_idx(x, y), z) != ring.add_idx(x, ring.add_idx(y, z)) {
                        return Err(format!("addition not associative at ({x},{y},{z})"));
                    }
                    if ring.mul_idx(ring.mul_idx(x, y), z) != ring.mul_idx(x, ring.mul_idx(y, z)) {
                        return Err(format!("multiplication not associative at ({x},{y},{z})"));
                    }
                    if ring.mul_idx(x, ring.add_idx(y, z))
                        != ring.add_idx(ring.mul_idx(x, y), ring.mul_idx(x, z))
                    {
                        return Err(format!("distributivity fails at ({x},{y},{z})"));
                    }
                }
            }
        }
    }
    Ok(())
}

/// char·1 = 0 and k·1 != 0 for 0 < k < char, by iteration.
pub fn verify_characteristic(ring: &FiniteRing) -> bool {
    let one = ring.one_idx();
    let mut acc = 0;
    for k in 1..=ring.characteristic() {
        acc = ring.add_idx(acc, one);
        if (acc == 0) != (k == ring.characteristic()) {
            return false;
        }
    }
    acc == 0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zmod_basics() {
        let r = make_zmod(60).unwrap();
        assert_eq!(r.order(), 60);
        assert_eq!(r.characteristic(), 60);
        assert_eq!(r.family(), Family::Zmod);
        // pow(20, 3) = 20 and int_mul(3, 20) = 0 in Z/60
        assert_eq!(r.pow_idx(20, 3), 20);
        assert_eq!(r.int_mul_idx(3, 20), 0);
        // pow(12, 5) = 12
        assert_eq!(r.pow_idx(12, 5), 12);
        assert!(make_zmod(1).is_err());
        assert!(make_zmod(0).is_err());
    }

    #[test]
    fn zmod_2_is_boolean() {
        let r = make_zmod(2).unwrap();
        assert_eq!(r.add_idx(1, 1), 0);
    }

    #[test]
    fn zmod_6_idempotent_three() {
        let r = make_zmod(6).unwrap();
        assert_eq!(r.mul_idx(3, 3), 3);
        assert_eq!(r.int_mul_idx(2, 3), 0);
    }

    #[test]
    fn product_mixed_radix_enumeration() {
        let f2 = make_prime_field(2).unwrap();
        let f3 = make_prime_field(3).unwrap();
        let r = make_product(&[f2, f3]).unwrap();
        assert_eq!(r.order(), 6);
        assert_eq!(r.characteristic(), 6);
        let tuples: Vec<Vec<u64>> = (0..6).map(|i| r.product_decode(i).unwrap()).collect();
        assert_eq!(
            tuples,
            vec![
                vec![0, 0],
                vec![1, 0],
                vec![0, 1],
                vec![1, 1],
                vec![0, 2],
                vec![1, 2]
            ]
        );
        for i in 0..6 {
            assert_eq!(r.product_encode(&r.product_decode(i).unwrap()).unwrap(), i);
        }
    }

    #[test]
    fn unary_product_matches_factor() {
        let f2 = make_prime_field(2).unwrap();
        let r = make_product(&[Arc::clone(&f2)]).unwrap();
        assert_eq!(r.order(), 2);
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(r.add_idx(x, y), f2.add_idx(x, y));
                assert_eq!(r.mul_idx(x, y), f2.mul_idx(x, y));
            }
        }
    }

    #[test]
    fn f17_fourth_power_is_constructible_above_cap() {
        let f17 = make_prime_field(17).unwrap();
        let r = make_product(&[f17.clone(), f17.clone(), f17.clone(), f17]).unwrap();
        assert_eq!(r.order(), 83521);
        assert_eq!(r.characteristic(), 17);
        let one = r.one_idx();
        assert_eq!(r.product_decode(one).unwrap(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn additive_inverse_everywhere_on_small_rings() {
        let rings = [make_zmod(6).unwrap(), make_zmod(8).unwrap()];
        for r in &rings {
            for x in 0..r.order() {
                assert_eq!(r.add_idx(x, r.neg_idx(x)), 0);
            }
        }
    }

    #[test]
    fn axioms_and_characteristic() {
        let f2 = make_prime_field(2).unwrap();
        let f3 = make_prime_field(3).unwrap();
        let rings = [
            make_zmod(12).unwrap(),
            make_product(&[f2, f3]).unwrap(),
        ];
        for r in &rings {
            verify_ring_axioms(r, true).unwrap();
            assert!(verify_characteristic(r));
        }
    }

    #[test]
    fn element_api_and_mismatch() {
        let r = make_zmod(6).unwrap();
        let s = make_zmod(7).unwrap();
        let x = Element::new(&r, 3).unwrap();
        let y = Element::new(&r, 4).unwrap();
        assert_eq!(x.add(&y).unwrap().index(), 1);
        assert_eq!(x.mul(&y).unwrap().index(), 0);
        let z = Element::new(&s, 3).unwrap();
        assert!(matches!(x.add(&z), Err(RingError::RingMismatch(_))));
        assert!(Element::new(&r, 6).is_err());

        // separately constructed descriptors of the same ring compare equal
        let r2 = make_zmod(6).unwrap();
        let x2 = Element::new(&r2, 3).unwrap();
        assert_eq!(x, x2);
    }

    #[test]
    fn ring_arith_dispatch() {
        let r = make_zmod(60).unwrap();
        let x = Element::new(&r, 20).unwrap();
        let p = ring_arith(&r, RingOp::Pow, ArithArgs::Pow(&x, 3)).unwrap();
        assert_eq!(p.index(), 20);
        let m = ring_arith(&r, RingOp::IntMul, ArithArgs::IntMul(3, &x)).unwrap();
        assert!(m.is_zero());
        assert!(ring_arith(&r, RingOp::Add, ArithArgs::Unary(&x)).is_err());
    }

    #[test]
    fn int_mul_signs() {
        let r = make_zmod(10).unwrap();
        assert_eq!(r.int_mul_idx(-3, 4), r.neg_idx(r.int_mul_idx(3, 4)));
        assert_eq!(r.int_mul_idx(0, 7), 0);
        assert_eq!(r.int_mul_idx(23, 1), 3);
    }

    #[test]
    fn op_tables_agree_with_dispatch() {
        let r = make_zmod(16).unwrap();
        let t = OpTables::build(&r, &Limits::default()).unwrap();
        for x in 0..16u64 {
            assert_eq!(t.neg(x as u32) as u64, r.neg_idx(x));
            assert_eq!(t.pow(x as u32, 5) as u64, r.pow_idx(x, 5));
            assert_eq!(t.int_mul(7, x as u32) as u64, r.int_mul_idx(7, x));
            for y in 0..16u64 {
                assert_eq!(t.add(x as u32, y as u32) as u64, r.add_idx(x, y));
                assert_eq!(t.mul(x as u32, y as u32) as u64, r.mul_idx(x, y));
            }
        }
        let big = make_zmod(1000).unwrap();
        assert!(OpTables::build(&big, &Limits::default())
            .unwrap_err()
            .is_size_guard());
    }

    #[test]
    fn enumeration_is_complete_and_ordered() {
        let r = make_zmod(6).unwrap();
        let idxs: Vec<u64> = enumerate_elements(&r).map(|e| e.index()).collect();
        assert_eq!(idxs, vec![0, 1, 2, 3, 4, 5]);
    }
}
