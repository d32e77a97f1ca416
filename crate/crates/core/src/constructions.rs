//! Derived ring constructions: trivial extension A∝E
//! (idealization of a module) and amalgamation A⋈^f J along a
//! homomorphism, with amalgamated duplication as the special case
//! B = A, f = id.
//!
//! Modules are finite direct sums of cyclic groups Z/m with explicit
//! scalar-action tables, verified exhaustively. This covers E = {0}
//! and E = A^k for base rings whose canonical additive decomposition
//! is multiplication-stable (Z/n, GF(p) and products of those) without
//! implementing general module theory.

use std::sync::Arc;

use crate::error::{Result, RingError};
use crate::hom::{identity_hom, RingHom};
use crate::ideal::IdealDesc;
use crate::ring::{make_ring_from_kind, FiniteRing, Limits, RingKind};

/// One cyclic summand Z/m with its scalar action A × Z/m → Z/m,
/// stored as `action[a_idx * m + x] = a·x`.
#[derive(Clone, Debug, PartialEq)]
pub struct CyclicComponent {
    m: u64,
    action: Vec<u64>,
}

impl CyclicComponent {
    pub fn modulus(&self) -> u64 {
        self.m
    }

    #[inline]
    fn act(&self, a_idx: u64, x: u64) -> u64 {
        self.action[(a_idx * self.m + x) as usize]
    }
}

/// A finite A-module: direct sum of cyclic components. Element codes
/// are mixed-radix over the components, first component least
/// significant; code 0 is the zero element.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleDesc {
    base: Arc<FiniteRing>,
    components: Vec<CyclicComponent>,
    size: u64,
}

impl ModuleDesc {
    /// The zero module E = {0}.
    pub fn zero(base: &Arc<FiniteRing>) -> ModuleDesc {
        ModuleDesc {
            base: Arc::clone(base),
            components: vec![],
            size: 1,
        }
    }

    /// E = A^k as a module over A. Supported when A's additive group
    /// splits into its canonical cyclic factors compatibly with
    /// multiplication — Z/n, GF(p), and products of those. Quotient
    /// rings like GF(2)[x]/(x^2+x+1) have no such splitting (x·1
    /// leaves the constant-digit summand), so they are rejected.
    pub fn free(base: &Arc<FiniteRing>, k: u32, limits: &Limits) -> Result<ModuleDesc> {
        if k == 0 {
            return Ok(Self::zero(base));
        }
        let pieces = zmod_like_pieces(base).ok_or_else(|| {
            RingError::InvalidParameter(format!(
                "free modules are not expressible over {} (additive summands are not stable under multiplication)",
                base.describe()
            ))
        })?;
        let mut size: u64 = 1;
        for _ in 0..k {
            for (m, _) in &pieces {
                size = size.checked_mul(*m).ok_or_else(|| {
                    RingError::InvalidParameter("module size overflows u64".into())
                })?;
            }
        }
        limits.check_materialize(
            base.order().checked_mul(size).ok_or_else(|| {
                RingError::InvalidParameter("module size overflows u64".into())
            })?,
            "free module construction",
        )?;
        let na = base.order();
        let mut components = Vec::with_capacity(pieces.len() * k as usize);
        for _ in 0..k {
            for &(m, stride) in &pieces {
                let mut action = vec![0u64; (na * m) as usize];
                for a in 0..na {
                    let coeff = (a / stride) % m;
                    for x in 0..m {
                        action[(a * m + x) as usize] = coeff * x % m;
                    }
                }
                let comp = CyclicComponent { m, action };
                verify_action_laws(base, &comp)?;
                components.push(comp);
            }
        }
        Ok(ModuleDesc {
            base: Arc::clone(base),
            components,
            size,
        })
    }

    /// A single cyclic component Z/m with an explicit action table
    /// (e.g. loaded from a file); the table is verified exhaustively.
    pub fn cyclic_with_table(
        base: &Arc<FiniteRing>,
        m: u64,
        action: Vec<u64>,
        limits: &Limits,
    ) -> Result<ModuleDesc> {
        if m == 0 {
            return Err(RingError::InvalidParameter("cyclic component Z/0".into()));
        }
        limits.check_materialize(
            base.order()
                .checked_mul(m)
                .ok_or_else(|| RingError::InvalidParameter("module size overflows u64".into()))?,
            "module action verification",
        )?;
        if action.len() as u64 != base.order() * m {
            return Err(RingError::InvalidParameter(format!(
                "action table has {} entries, expected |A|·m = {}",
                action.len(),
                base.order() * m
            )));
        }
        if action.iter().any(|&v| v >= m) {
            return Err(RingError::InvalidParameter(
                "action table value out of range".into(),
            ));
        }
        let comp = CyclicComponent { m, action };
        verify_action_laws(base, &comp)?;
        Ok(ModuleDesc {
            base: Arc::clone(base),
            components: vec![comp],
            size: m,
        })
    }

    pub fn base(&self) -> &Arc<FiniteRing> {
        &self.base
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn components(&self) -> &[CyclicComponent] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.size == 1
    }

    pub fn decode(&self, code: u64) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.components.len());
        let mut c = code;
        for comp in &self.components {
            out.push(c % comp.m);
            c /= comp.m;
        }
        debug_assert_eq!(c, 0);
        out
    }

    pub fn encode(&self, vals: &[u64]) -> u64 {
        debug_assert_eq!(vals.len(), self.components.len());
        let mut out = 0;
        for (comp, &v) in self.components.iter().zip(vals).rev() {
            out = out * comp.m + v;
        }
        out
    }

    pub fn add_code(&self, x: u64, y: u64) -> u64 {
        let mut out = 0;
        let mut stride = 1;
        let (mut xr, mut yr) = (x, y);
        for comp in &self.components {
            out += (xr % comp.m + yr % comp.m) % comp.m * stride;
            stride *= comp.m;
            xr /= comp.m;
            yr /= comp.m;
        }
        out
    }

    pub fn neg_code(&self, x: u64) -> u64 {
        let mut out = 0;
        let mut stride = 1;
        let mut xr = x;
        for comp in &self.components {
            out += (comp.m - xr % comp.m) % comp.m * stride;
            stride *= comp.m;
            xr /= comp.m;
        }
        out
    }

    pub fn scale_code(&self, a_idx: u64, x: u64) -> u64 {
        let mut out = 0;
        let mut stride = 1;
        let mut xr = x;
        for comp in &self.components {
            out += comp.act(a_idx, xr % comp.m) * stride;
            stride *= comp.m;
            xr /= comp.m;
        }
        out
    }

    pub fn render(&self, code: u64) -> String {
        match self.components.len() {
            0 => "0".to_string(),
            1 => code.to_string(),
            _ => {
                let vals: Vec<String> = self.decode(code).iter().map(|v| v.to_string()).collect();
                format!("({})", vals.join(","))
            }
        }
    }

    pub fn shape_string(&self) -> String {
        if self.components.is_empty() {
            return "zero".to_string();
        }
        let parts: Vec<String> = self.components.iter().map(|c| format!("Z/{}", c.m)).collect();
        parts.join(" x ")
    }
}

/// Canonical cyclic summands (modulus, index stride) of the additive
/// group, valid as A-module summands. Only rings built from Z/n and
/// GF(p) by products qualify.
fn zmod_like_pieces(ring: &FiniteRing) -> Option<Vec<(u64, u64)>> {
    match ring.kind() {
        RingKind::Zmod { n } => Some(vec![(*n, 1)]),
        RingKind::PrimeField { p } => Some(vec![(*p, 1)]),
        RingKind::Product { factors } => {
            let mut out = Vec::new();
            let mut stride = 1;
            for f in factors {
                for (m, s) in zmod_like_pieces(f)? {
                    out.push((m, s * stride));
                }
                stride *= f.order();
            }
            Some(out)
        }
        _ => None,
    }
}

/// a(x+y)=ax+ay, (a+b)x=ax+bx, (ab)x=a(bx), 1x=x — all exhaustively.
fn verify_action_laws(base: &FiniteRing, comp: &CyclicComponent) -> Result<()> {
    let na = base.order();
    let m = comp.m;
    let one = base.one_idx();
    for x in 0..m {
        if comp.act(one, x) != x {
            return Err(RingError::InvalidParameter(format!(
                "action law 1·x = x fails at x = {x}"
            )));
        }
    }
    for a in 0..na {
        for x in 0..m {
            for y in 0..m {
                if comp.act(a, (x + y) % m) != (comp.act(a, x) + comp.act(a, y)) % m {
                    return Err(RingError::InvalidParameter(format!(
                        "action law a(x+y) = ax+ay fails at a = {a}, x = {x}, y = {y}"
                    )));
                }
            }
        }
        for b in 0..na {
            for x in 0..m {
                if comp.act(base.add_idx(a, b), x) != (comp.act(a, x) + comp.act(b, x)) % m {
                    return Err(RingError::InvalidParameter(format!(
                        "action law (a+b)x = ax+bx fails at a = {a}, b = {b}, x = {x}"
                    )));
                }
                if comp.act(base.mul_idx(a, b), x) != comp.act(a, comp.act(b, x)) {
                    return Err(RingError::InvalidParameter(format!(
                        "action law (ab)x = a(bx) fails at a = {a}, b = {b}, x = {x}"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// The trivial ring extension (idealization) A∝E with
/// (a,e)(b,f) = (ab, af + be). Element index = a_idx + |A|·e_code.
pub fn make_trivial_extension(
    base: &Arc<FiniteRing>,
    module: &ModuleDesc,
    limits: &Limits,
) -> Result<Arc<FiniteRing>> {
    if module.base() != base {
        return Err(RingError::InvalidParameter(
            "module is not over the given base ring".into(),
        ));
    }
    let order = base
        .order()
        .checked_mul(module.size())
        .ok_or_else(|| RingError::InvalidParameter("extension order overflows u64".into()))?;
    limits.check_materialize(order, "trivial extension")?;
    let ring = make_ring_from_kind(
        RingKind::TrivialExt {
            module: module.clone(),
        },
        order,
        base.characteristic(),
        base.one_idx(),
    );
    // bug trap: identity and commutativity, exhaustive at oracle scale,
    // strided above it (both hold structurally given the action laws)
    let one = ring.one_idx();
    let step = if order <= limits.oracle_max { 1 } else { (order / limits.oracle_max).max(1) };
    let mut x = 0;
    while x < order {
        if ring.mul_idx(one, x) != x {
            return Err(RingError::Internal(format!(
                "trivial extension identity fails at index {x}"
            )));
        }
        let mut y = 0;
        while y < order {
            if ring.mul_idx(x, y) != ring.mul_idx(y, x) {
                return Err(RingError::Internal(format!(
                    "trivial extension commutativity fails at ({x}, {y})"
                )));
            }
            y += step;
        }
        x += step;
    }
    Ok(ring)
}

/// Descriptor for A⋈^f J: rings A and B, a verified hom f: A → B, and
/// an ideal J of B.
#[derive(Clone, Debug)]
pub struct AmalgDesc {
    pub a: Arc<FiniteRing>,
    pub b: Arc<FiniteRing>,
    pub hom: RingHom,
    pub j: IdealDesc,
}

impl AmalgDesc {
    pub fn new(a: &Arc<FiniteRing>, b: &Arc<FiniteRing>, hom: RingHom, j: IdealDesc) -> Result<AmalgDesc> {
        if hom.source() != a || hom.target() != b {
            return Err(RingError::HomInvalid(
                "hom endpoints do not match the amalgamation rings".into(),
            ));
        }
        if j.ring() != b {
            return Err(RingError::IdealInvalid(
                "J is not an ideal of the target ring B".into(),
            ));
        }
        Ok(AmalgDesc {
            a: Arc::clone(a),
            b: Arc::clone(b),
            hom,
            j,
        })
    }
}

/// Verified internal form stored inside the ring descriptor: the ideal
/// is expanded and the identity condition has been checked.
#[derive(Clone, Debug, PartialEq)]
pub struct AmalgData {
    pub(crate) a: Arc<FiniteRing>,
    pub(crate) b: Arc<FiniteRing>,
    pub(crate) hom: RingHom,
    pub(crate) j_elems: Vec<u64>,
}

impl AmalgData {
    pub fn a(&self) -> &Arc<FiniteRing> {
        &self.a
    }

    pub fn b(&self) -> &Arc<FiniteRing> {
        &self.b
    }

    pub fn hom(&self) -> &RingHom {
        &self.hom
    }

    pub fn j_elements(&self) -> &[u64] {
        &self.j_elems
    }

    /// Position of a B-element inside the sorted enumeration of J.
    pub fn j_pos(&self, b_idx: u64) -> Option<u64> {
        self.j_elems.binary_search(&b_idx).ok().map(|p| p as u64)
    }

    /// The B-component f(a) + j of the pair (a, j-at-position).
    pub fn b_part(&self, a_idx: u64, j_pos: u64) -> u64 {
        self.b
            .add_idx(self.hom.apply_idx(a_idx), self.j_elems[j_pos as usize])
    }
}

/// The amalgamation A⋈^f J = {(a, f(a)+j)} as a subring of A×B.
/// Element index = a_idx + |A|·(position of j in sorted J). The
/// identity is (1_A, f(1_A)), which requires the identity condition
/// f(1_A)·(f(a)+j) = f(a)+j for all a, j — verified here, witness
/// reported on failure. The canonical example hom a ↦ 3a₀ into Z/6
/// is non-unital yet satisfies this.
pub fn make_amalgamation(desc: &AmalgDesc, limits: &Limits) -> Result<Arc<FiniteRing>> {
    // revalidate endpoint wiring in case the desc was built by hand
    if desc.hom.source() != &desc.a || desc.hom.target() != &desc.b {
        return Err(RingError::HomInvalid(
            "hom endpoints do not match the amalgamation rings".into(),
        ));
    }
    if desc.j.ring() != &desc.b {
        return Err(RingError::IdealInvalid(
            "J is not an ideal of the target ring B".into(),
        ));
    }
    let j_elems = desc.j.expand(limits)?;
    let order = desc
        .a
        .order()
        .checked_mul(j_elems.len() as u64)
        .ok_or_else(|| RingError::InvalidParameter("amalgamation order overflows u64".into()))?;
    limits.check_materialize(order, "amalgamation")?;

    let f_one = desc.hom.apply_idx(desc.a.one_idx());
    for a in 0..desc.a.order() {
        let fa = desc.hom.apply_idx(a);
        for &j in &j_elems {
            let v = desc.b.add_idx(fa, j);
            if desc.b.mul_idx(f_one, v) != v {
                return Err(RingError::IdentityCondition(format!(
                    "f(1)·(f(a)+j) != f(a)+j at a = {a}, j = {j}"
                )));
            }
        }
    }

    Ok(make_ring_from_kind(
        RingKind::Amalgamation {
            data: AmalgData {
                a: Arc::clone(&desc.a),
                b: Arc::clone(&desc.b),
                hom: desc.hom.clone(),
                j_elems,
            },
        },
        order,
        desc.a.characteristic(),
        desc.a.one_idx(),
    ))
}

/// Amalgamated duplication A⋈I = amalgamation of A with itself along I
/// with respect to the identity.
pub fn make_duplication(a: &Arc<FiniteRing>, i: &IdealDesc, limits: &Limits) -> Result<Arc<FiniteRing>> {
    let desc = AmalgDesc::new(a, a, identity_hom(a), i.clone())?;
    make_amalgamation(&desc, limits)
}

/// The projection (a, f(a)+j) ↦ a, built as a verified surjective hom.
pub fn amalg_projection_to_a(ring: &Arc<FiniteRing>) -> Result<RingHom> {
    let data = match ring.kind() {
        RingKind::Amalgamation { data } => data,
        _ => {
            return Err(RingError::InvalidParameter(
                "projection requires an amalgamation ring".into(),
            ))
        }
    };
    let na = data.a.order();
    let table: Vec<u64> = (0..ring.order()).map(|idx| idx % na).collect();
    crate::hom::make_hom(ring, &data.a, table)
}
