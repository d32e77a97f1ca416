//! Decision procedures: brute-force oracles (exhaustive sweeps over
//! enumerated elements) and theorem-based fast paths for the same
//! questions, kept strictly separate so they can be played against
//! each other.
//!
//! Oracles are pure sweeps; the reported witness is always the first
//! counterexample in canonical enumeration order, so failures are
//! reproducible. Everything here is single-threaded; sweeps could be
//! partitioned freely as long as the reported witness stays the global
//! minimum index.

use std::collections::HashSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::arith;
use crate::constructions::AmalgDesc;
use crate::error::{Result, RingError};
use crate::hom::{make_hom, RingHom};
use crate::ideal::IdealDesc;
use crate::poly::FpPoly;
use crate::quotient::PolyOverRing;
use crate::ring::{FiniteRing, Limits, OpTables, RingKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Oracle,
    Theorem,
}

/// A concrete counterexample: the canonical index of the offending
/// element (or component), its rendering, and which condition failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub index: u64,
    pub element: String,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecisionReport {
    pub verdict: bool,
    pub method: Method,
    pub witness: Option<Witness>,
    /// Elements examined to reach the verdict.
    pub checked: u64,
    /// Wall-clock time; excluded from serialization so machine-readable
    /// reports stay byte-stable across runs.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl DecisionReport {
    fn finish(verdict: bool, method: Method, witness: Option<Witness>, checked: u64, t0: Instant) -> Self {
        DecisionReport {
            verdict,
            method,
            witness,
            checked,
            elapsed: t0.elapsed(),
        }
    }
}

fn require_prime(p: u64) -> Result<()> {
    if !arith::is_prime(p) {
        return Err(RingError::InvalidParameter(format!(
            "{p} is not prime; p-ring questions require a prime p"
        )));
    }
    Ok(())
}

/// x^p = x and p·x = 0 for every element, by exhaustive sweep.
/// Two passes — the power condition over all elements, then the
/// characteristic condition — so the witness for a ring like Z/4 is
/// the idempotency failure (2² = 0 ≠ 2), not the earlier 2·1 ≠ 0.
pub fn is_p_ring_oracle(ring: &Arc<FiniteRing>, p: u64, limits: &Limits) -> Result<DecisionReport> {
    let t0 = Instant::now();
    require_prime(p)?;
    let t = OpTables::build(ring, limits)?;
    let mut checked = 0;
    for x in 0..t.n as u32 {
        checked += 1;
        if t.pow(x, p) != x {
            return Ok(DecisionReport::finish(
                false,
                Method::Oracle,
                Some(Witness {
                    index: x as u64,
                    element: ring.element_string(x as u64),
                    reason: format!("x^{p} != x"),
                }),
                checked,
                t0,
            ));
        }
    }
    for x in 0..t.n as u32 {
        checked += 1;
        if t.int_mul(p, x) != 0 {
            return Ok(DecisionReport::finish(
                false,
                Method::Oracle,
                Some(Witness {
                    index: x as u64,
                    element: ring.element_string(x as u64),
                    reason: format!("{p}·x != 0"),
                }),
                checked,
                t0,
            ));
        }
    }
    Ok(DecisionReport::finish(true, Method::Oracle, None, checked, t0))
}

/// ∀a ∃b: a = a²b, by exhaustive sweep over pairs.
pub fn is_vnr_oracle(ring: &Arc<FiniteRing>, limits: &Limits) -> Result<DecisionReport> {
    let t0 = Instant::now();
    let t = OpTables::build(ring, limits)?;
    let mut checked = 0;
    for a in 0..t.n as u32 {
        checked += 1;
        let a2 = t.mul(a, a);
        if !(0..t.n as u32).any(|b| t.mul(a2, b) == a) {
            return Ok(DecisionReport::finish(
                false,
                Method::Oracle,
                Some(Witness {
                    index: a as u64,
                    element: ring.element_string(a as u64),
                    reason: "no b with a = a²b".into(),
                }),
                checked,
                t0,
            ));
        }
    }
    Ok(DecisionReport::finish(true, Method::Oracle, None, checked, t0))
}

/// Every element of the ideal satisfies x^p = x and p·x = 0.
pub fn is_p_ideal(ideal: &IdealDesc, p: u64, limits: &Limits) -> Result<DecisionReport> {
    let t0 = Instant::now();
    require_prime(p)?;
    let ring = ideal.ring();
    let elems = ideal.expand(limits)?;
    let mut checked = 0;
    for &x in &elems {
        checked += 1;
        if ring.pow_idx(x, p) != x {
            return Ok(DecisionReport::finish(
                false,
                Method::Oracle,
                Some(Witness {
                    index: x,
                    element: ring.element_string(x),
                    reason: format!("x^{p} != x"),
                }),
                checked,
                t0,
            ));
        }
        if ring.int_mul_idx(p as i64, x) != 0 {
            return Ok(DecisionReport::finish(
                false,
                Method::Oracle,
                Some(Witness {
                    index: x,
                    element: ring.element_string(x),
                    reason: format!("{p}·x != 0"),
                }),
                checked,
                t0,
            ));
        }
    }
    Ok(DecisionReport::finish(true, Method::Oracle, None, checked, t0))
}

struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn new(n: usize) -> Self {
        BitSet {
            words: vec![0; n.div_ceil(64)],
        }
    }

    #[inline]
    fn insert(&mut self, i: u32) -> bool {
        let w = &mut self.words[(i / 64) as usize];
        let bit = 1u64 << (i % 64);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }
}

/// Work cap for the ideal-lattice closure: the lattice of a ring within
/// the oracle guard is usually tiny (2^n for p-rings, divisor lattices
/// for Z/n and F_p[x]/(f)) but can explode for idealization-style rings.
const IDEAL_CLOSURE_WORK_CAP: u64 = 200_000_000;

/// All ideals, extensionally: every principal ideal xR, closed under
/// pairwise ideal sums to a fixpoint. Complete because every ideal of
/// a finite ring is a finite sum of principal ideals. Result is
/// deduplicated and sorted by (size, elements).
pub fn enumerate_ideals_oracle(ring: &Arc<FiniteRing>, limits: &Limits) -> Result<Vec<IdealDesc>> {
    limits.check_oracle(ring.order(), "ideal enumeration")?;
    let t = OpTables::build(ring, limits)?;
    let n = t.n;
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut ideals: Vec<Vec<u32>> = Vec::new();
    let mut work: u64 = 0;

    for x in 0..n as u32 {
        let mut bits = BitSet::new(n);
        let mut members = Vec::new();
        for r in 0..n as u32 {
            let v = t.mul(x, r);
            if bits.insert(v) {
                members.push(v);
            }
        }
        work += n as u64;
        members.sort_unstable();
        if seen.insert(bits.words.clone()) {
            ideals.push(members);
        }
    }

    // close under pairwise sums; pair (i, j<i) is processed exactly once
    let mut i = 1;
    while i < ideals.len() {
        for j in 0..i {
            work += (ideals[i].len() * ideals[j].len()) as u64;
            if work > IDEAL_CLOSURE_WORK_CAP {
                return Err(RingError::SizeGuard(
                    "ideal lattice too large to enumerate within the work cap".into(),
                ));
            }
            let mut bits = BitSet::new(n);
            let mut members = Vec::new();
            for &a in &ideals[i] {
                for &b in &ideals[j] {
                    let v = t.add(a, b);
                    if bits.insert(v) {
                        members.push(v);
                    }
                }
            }
            members.sort_unstable();
            if seen.insert(bits.words.clone()) {
                ideals.push(members);
            }
        }
        i += 1;
    }

    ideals.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(ideals
        .into_iter()
        .map(|members| {
            IdealDesc::extensional_unchecked(ring, members.into_iter().map(u64::from).collect())
        })
        .collect())
}

/// The p-ideal sublist of the full ideal lattice.
pub fn list_p_ideals_oracle(ring: &Arc<FiniteRing>, p: u64, limits: &Limits) -> Result<Vec<IdealDesc>> {
    require_prime(p)?;
    let all = enumerate_ideals_oracle(ring, limits)?;
    let mut out = Vec::new();
    for ideal in all {
        if is_p_ideal(&ideal, p, limits)?.verdict {
            out.push(ideal);
        }
    }
    Ok(out)
}

/// Existence of a nonzero p-ideal, by oracle enumeration.
pub fn has_nonzero_p_ideal_oracle(ring: &Arc<FiniteRing>, p: u64, limits: &Limits) -> Result<DecisionReport> {
    let t0 = Instant::now();
    let ideals = enumerate_ideals_oracle(ring, limits)?;
    let mut checked = 0;
    for ideal in &ideals {
        checked += 1;
        if !ideal.is_zero_ideal() && is_p_ideal(ideal, p, limits)?.verdict {
            return Ok(DecisionReport::finish(true, Method::Oracle, None, checked, t0));
        }
    }
    Ok(DecisionReport::finish(false, Method::Oracle, None, checked, t0))
}

/// The p-ideals of Z/nZ by pure integer arithmetic: if v_p(n) = 1 the
/// unique nonzero p-ideal is (n/p)Z/nZ, otherwise only (0).
pub fn p_ideals_of_zmod(n: u64, p: u64) -> Result<Vec<IdealDesc>> {
    require_prime(p)?;
    let ring = crate::ring::make_zmod(n)?;
    let mut out = vec![IdealDesc::zero(&ring)];
    if arith::valuation(n, p) == 1 {
        out.push(IdealDesc::zmod(&ring, n / p)?);
    }
    Ok(out)
}

/// Simple-zero fast path: F_p[x]/(f) has a nonzero p-ideal iff f has
/// at least one simple zero in F_p. No ring is materialized.
pub fn quotient_has_p_ideal(p: u64, f: &FpPoly) -> Result<DecisionReport> {
    let t0 = Instant::now();
    require_prime(p)?;
    if f.modulus() != p {
        return Err(RingError::ModulusMismatch(p, f.modulus()));
    }
    let roots = f.roots_with_multiplicity()?;
    let verdict = roots.iter().any(|&(_, m)| m == 1);
    Ok(DecisionReport::finish(verdict, Method::Theorem, None, p, t0))
}

/// A projection R ↠ F_p that can be applied to element indices without
/// materializing a hom table — either a digit extraction (valid for
/// products of copies of F_p, where the mixed radix is uniform) or a
/// table from an oracle-backed decomposition.
#[derive(Clone, Debug)]
pub struct FpProjection {
    p: u64,
    kind: ProjKind,
}

#[derive(Clone, Debug)]
enum ProjKind {
    PowShift { div: u64 },
    Table(Arc<Vec<u64>>),
}

impl FpProjection {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn apply(&self, idx: u64) -> u64 {
        match &self.kind {
            ProjKind::PowShift { div } => (idx / div) % self.p,
            ProjKind::Table(t) => t[idx as usize],
        }
    }
}

/// Digit strides when the ring is structurally (F_p)^n — Z/p, GF(p),
/// and nested products of those.
fn structural_fp_strides(ring: &FiniteRing, p: u64) -> Option<Vec<u64>> {
    match ring.kind() {
        RingKind::Zmod { n } if *n == p => Some(vec![1]),
        RingKind::PrimeField { p: q } if *q == p => Some(vec![1]),
        RingKind::Product { factors } => {
            let mut out = Vec::new();
            let mut stride = 1;
            for f in factors {
                for s in structural_fp_strides(f, p)? {
                    out.push(s * stride);
                }
                stride *= f.order();
            }
            Some(out)
        }
        _ => None,
    }
}

/// The F_p-projections of a p-ring R: structural digit extractions
/// when R is visibly (F_p)^n (works at any size), otherwise the
/// projection tables of the oracle-backed decomposition (guarded).
pub fn fp_projections(ring: &Arc<FiniteRing>, p: u64, limits: &Limits) -> Result<Vec<FpProjection>> {
    require_prime(p)?;
    if let Some(strides) = structural_fp_strides(ring, p) {
        return Ok(strides
            .into_iter()
            .map(|div| FpProjection {
                p,
                kind: ProjKind::PowShift { div },
            })
            .collect());
    }
    let decomp = mccoy_decompose(ring, p, limits)?;
    Ok(decomp
        .projections
        .iter()
        .map(|h| FpProjection {
            p,
            kind: ProjKind::Table(Arc::new(h.table().to_vec())),
        })
        .collect())
}

/// Coefficientwise reduction of f through a projection, leading zeros
/// stripped.
pub fn reduce_with_projection(f: &PolyOverRing, proj: &FpProjection) -> FpPoly {
    let digits: Vec<u64> = f.coeffs().iter().map(|&c| proj.apply(c)).collect();
    FpPoly::from_reduced(proj.p, digits)
}

/// Result of decomposing a finite p-ring R with n maximal ideals as
/// (F_p)^n: the per-maximal-ideal projections, the CRT isomorphism,
/// and the verified structure counts (|R| = p^n, exactly 2^n ideals,
/// all of them p-ideals).
#[derive(Clone, Debug)]
pub struct McCoyDecomposition {
    pub p: u64,
    pub n: usize,
    pub maximal_ideals: Vec<IdealDesc>,
    pub projections: Vec<RingHom>,
    pub iso: RingHom,
    pub ideal_count: u64,
    pub order_check: bool,
}

/// Decomposes a verified finite p-ring as (F_p)^n. All structure
/// claims from the theorem and its remark are re-verified here; a
/// failure of any of them is reported as an internal inconsistency
/// (bug trap), not a user error.
pub fn mccoy_decompose(ring: &Arc<FiniteRing>, p: u64, limits: &Limits) -> Result<McCoyDecomposition> {
    require_prime(p)?;
    let pring = is_p_ring_oracle(ring, p, limits)?;
    if !pring.verdict {
        return Err(RingError::Precondition(format!(
            "not a {p}-ring: {}",
            pring
                .witness
                .map(|w| format!("element {} fails ({})", w.element, w.reason))
                .unwrap_or_default()
        )));
    }
    let ideals = enumerate_ideals_oracle(ring, limits)?;
    let order = ring.order();

    // maximal ideals: proper, of index p (p-ring optimization), and
    // maximal under inclusion within the enumerated lattice
    let mut maximal: Vec<&IdealDesc> = Vec::new();
    for cand in &ideals {
        if cand.size() == order || cand.size() * p != order {
            continue;
        }
        let celems = cand.expand(limits)?;
        let cset: HashSet<u64> = celems.iter().copied().collect();
        let mut is_max = true;
        for other in &ideals {
            if other.size() >= order || other.size() <= cand.size() {
                continue;
            }
            let oelems = other.expand(limits)?;
            if celems.iter().all(|e| oelems.binary_search(e).is_ok()) {
                is_max = false;
                break;
            }
        }
        let _ = cset;
        if is_max {
            maximal.push(cand);
        }
    }
    let n = maximal.len();

    let fp = crate::ring::make_prime_field(p)?;
    let one = ring.one_idx();
    // c·1 for c in [0, p): distinct coset representatives mod every
    // maximal ideal, since 1 generates a copy of F_p
    let scalars: Vec<u64> = (0..p).map(|c| ring.int_mul_idx(c as i64, one)).collect();

    let mut projections = Vec::with_capacity(n);
    for m in &maximal {
        let melems = m.expand(limits)?;
        let mut table = Vec::with_capacity(order as usize);
        for x in 0..order {
            let mut found = None;
            for (c, &c1) in scalars.iter().enumerate() {
                if melems.binary_search(&ring.sub_idx(x, c1)).is_ok() {
                    found = Some(c as u64);
                    break;
                }
            }
            table.push(found.ok_or_else(|| {
                RingError::Internal(format!(
                    "element {x} lies in no coset c·1 + m of a maximal ideal"
                ))
            })?);
        }
        let h = make_hom(ring, &fp, table)
            .map_err(|e| RingError::Internal(format!("coset projection is not a hom: {e}")))?;
        if !h.is_surjective() {
            return Err(RingError::Internal("coset projection not surjective".into()));
        }
        projections.push(h);
    }

    let target = crate::ring::make_product(&vec![fp; n.max(1)])?;
    let mut iso_table = Vec::with_capacity(order as usize);
    for x in 0..order {
        let comps: Vec<u64> = projections.iter().map(|h| h.apply_idx(x)).collect();
        iso_table.push(target.product_encode(&comps)?);
    }
    let iso = make_hom(ring, &target, iso_table)
        .map_err(|e| RingError::Internal(format!("CRT map is not a hom: {e}")))?;
    if !iso.is_bijective() {
        return Err(RingError::Internal("CRT map is not bijective".into()));
    }

    let order_check = arith::checked_pow(p, n as u32) == Some(order);
    if !order_check {
        return Err(RingError::Internal(format!(
            "|R| = {order} is not p^n = {p}^{n}"
        )));
    }
    let ideal_count = ideals.len() as u64;
    if ideal_count != 1u64 << n {
        return Err(RingError::Internal(format!(
            "ideal count {ideal_count} != 2^{n}"
        )));
    }
    for ideal in &ideals {
        if !is_p_ideal(ideal, p, limits)?.verdict {
            return Err(RingError::Internal(format!(
                "ideal {ideal} of a {p}-ring is not a {p}-ideal"
            )));
        }
    }

    Ok(McCoyDecomposition {
        p,
        n,
        maximal_ideals: maximal.into_iter().cloned().collect(),
        projections,
        iso,
        ideal_count,
        order_check,
    })
}

/// Theorem-based p-ring decision, recursive over the ring structure:
/// Z/n and GF(q) iff the characteristic is exactly p; F_p[x]/(f) iff
/// f | x^p − x; products componentwise; A∝E iff A is and E = {0};
/// A⋈^f J iff A is and J is a p-ideal of B. Produces a concrete
/// witness element on failure. Never materializes anything larger
/// than the ideal J.
pub fn is_p_ring_theorem(ring: &Arc<FiniteRing>, p: u64, limits: &Limits) -> Result<DecisionReport> {
    let t0 = Instant::now();
    require_prime(p)?;
    let result = p_ring_theorem_inner(ring, p, limits)?;
    Ok(match result {
        None => DecisionReport::finish(true, Method::Theorem, None, 0, t0),
        Some(w) => DecisionReport::finish(false, Method::Theorem, Some(w), 0, t0),
    })
}

fn char_witness(ring: &FiniteRing, p: u64) -> Witness {
    Witness {
        index: ring.one_idx(),
        element: ring.element_string(ring.one_idx()),
        reason: format!("characteristic is {}, so {p}·1 != 0", ring.characteristic()),
    }
}

fn p_ring_theorem_inner(ring: &Arc<FiniteRing>, p: u64, limits: &Limits) -> Result<Option<Witness>> {
    match ring.kind() {
        RingKind::Zmod { n } => Ok(if *n == p { None } else { Some(char_witness(ring, p)) }),
        RingKind::PrimeField { p: q } => {
            Ok(if *q == p { None } else { Some(char_witness(ring, p)) })
        }
        RingKind::Quotient { p: q, modulus } => {
            if *q != p {
                return Ok(Some(char_witness(ring, p)));
            }
            if modulus.divides_xp_minus_x()? {
                Ok(None)
            } else {
                // the class of x itself fails: x^p ≡ x mod f iff f | x^p − x
                let x_idx = p; // digits (0, 1)
                Ok(Some(Witness {
                    index: x_idx,
                    element: ring.element_string(x_idx),
                    reason: format!("x^{p} != x in GF({p})[x]/({modulus})"),
                }))
            }
        }
        RingKind::Product { factors } => {
            let mut stride = 1u64;
            for f in factors {
                if let Some(w) = p_ring_theorem_inner(f, p, limits)? {
                    let index = w.index * stride;
                    return Ok(Some(Witness {
                        index,
                        element: ring.element_string(index),
                        reason: w.reason,
                    }));
                }
                stride *= f.order();
            }
            Ok(None)
        }
        RingKind::TrivialExt { module } => {
            let base = module.base();
            if let Some(w) = p_ring_theorem_inner(base, p, limits)? {
                // (a, 0) fails exactly like a
                return Ok(Some(Witness {
                    index: w.index,
                    element: ring.element_string(w.index),
                    reason: w.reason,
                }));
            }
            if module.size() > 1 {
                let index = base.order(); // the element (0, e₁)
                return Ok(Some(Witness {
                    index,
                    element: ring.element_string(index),
                    reason: format!("(0,e)^{p} = 0 != (0,e) for a nonzero module element"),
                }));
            }
            Ok(None)
        }
        RingKind::Amalgamation { data } => {
            if let Some(w) = p_ring_theorem_inner(data.a(), p, limits)? {
                return Ok(Some(Witness {
                    index: w.index, // the pair (a, f(a)) at j-position 0
                    element: ring.element_string(w.index),
                    reason: w.reason,
                }));
            }
            // J must be a p-ideal of B
            let b = data.b();
            for (pos, &j) in data.j_elements().iter().enumerate() {
                let bad_pow = b.pow_idx(j, p) != j;
                if bad_pow || b.int_mul_idx(p as i64, j) != 0 {
                    let index = data.a().order() * pos as u64; // (0, j)
                    let reason = if bad_pow {
                        format!("j^{p} != j for j in J")
                    } else {
                        format!("{p}·j != 0 for j in J")
                    };
                    return Ok(Some(Witness {
                        index,
                        element: ring.element_string(index),
                        reason,
                    }));
                }
            }
            Ok(None)
        }
    }
}

/// Theorem-based von Neumann regularity where a structural criterion
/// exists: fields always; Z/n iff n squarefree; F_p[x]/(f) iff f
/// squarefree; products componentwise; A∝E iff A is and E = {0}.
/// Returns None where no structural criterion applies
/// (amalgamations), so callers can fall back to the oracle.
pub fn is_vnr_theorem(ring: &Arc<FiniteRing>) -> Result<Option<bool>> {
    match ring.kind() {
        RingKind::Zmod { n } => Ok(Some(arith::is_squarefree(*n))),
        RingKind::PrimeField { .. } => Ok(Some(true)),
        RingKind::Quotient { modulus, .. } => Ok(Some(modulus.is_squarefree()?)),
        RingKind::Product { factors } => {
            let mut all_true = true;
            for f in factors {
                match is_vnr_theorem(f)? {
                    Some(false) => return Ok(Some(false)),
                    Some(true) => {}
                    None => all_true = false,
                }
            }
            Ok(if all_true { Some(true) } else { None })
        }
        RingKind::TrivialExt { module } => {
            if module.size() > 1 {
                Ok(Some(false))
            } else {
                is_vnr_theorem(module.base())
            }
        }
        RingKind::Amalgamation { .. } => Ok(None),
    }
}

/// Per-component reduction summary inside [`PolyQuotientReport`].
#[derive(Clone, Debug, Serialize)]
pub struct ComponentReduction {
    /// 1-based, matching the conventional f_j numbering.
    pub component: usize,
    pub poly: String,
    pub degree: usize,
    pub divides_xp_minus_x: bool,
    pub distinct_roots: u64,
}

/// Fast-path report for R[x]/(f): verdict plus the
/// reductions, their root counts, and the order the quotient would
/// have — all computed without materializing the quotient.
#[derive(Clone, Debug, Serialize)]
pub struct PolyQuotientReport {
    pub report: DecisionReport,
    pub components: Vec<ComponentReduction>,
    pub total_distinct_roots: u64,
    /// p^(Σ deg f_j); None only on u64 overflow.
    pub predicted_order: Option<u64>,
    #[serde(skip)]
    pub reductions: Vec<FpPoly>,
}

/// R[x]/(f) is a p-ring iff every reduction f_j splits with
/// distinct roots, equivalently f_j | x^p − x. For R = F_p this
/// degenerates to the single-divisor criterion f | x^p − x.
pub fn pring_poly_quotient_is_pring(
    r: &Arc<FiniteRing>,
    f: &PolyOverRing,
    p: u64,
    limits: &Limits,
) -> Result<PolyQuotientReport> {
    let t0 = Instant::now();
    require_prime(p)?;
    if f.ring() != r {
        return Err(RingError::RingMismatch(
            "polynomial is not over the given coefficient ring".into(),
        ));
    }
    let precheck = is_p_ring_theorem(r, p, limits)?;
    if !precheck.verdict {
        return Err(RingError::Precondition(format!(
            "coefficient ring {} is not a {p}-ring",
            r.describe()
        )));
    }
    let projections = fp_projections(r, p, limits)?;

    let mut components = Vec::with_capacity(projections.len());
    let mut reductions = Vec::with_capacity(projections.len());
    let mut verdict = true;
    let mut witness = None;
    let mut total_roots = 0u64;
    let mut predicted: Option<u64> = Some(1);
    for (jx, proj) in projections.iter().enumerate() {
        let fj = reduce_with_projection(f, proj);
        if fj.is_zero() {
            return Err(RingError::DegenerateInput(format!(
                "reduction f_{} is zero", jx + 1
            )));
        }
        if fj.is_constant() {
            return Err(RingError::DegenerateInput(format!(
                "reduction f_{} is a nonzero constant; the component quotient is the zero ring",
                jx + 1
            )));
        }
        let divides = fj.divides_xp_minus_x()?;
        let roots = fj.roots_with_multiplicity()?;
        let distinct = roots.len() as u64;
        total_roots += distinct;
        let deg = fj.degree().unwrap();
        predicted = predicted
            .and_then(|acc| arith::checked_pow(p, deg as u32).and_then(|o| acc.checked_mul(o)));
        if !divides && verdict {
            verdict = false;
            witness = Some(Witness {
                index: (jx + 1) as u64,
                element: fj.to_string(),
                reason: format!("f_{} does not divide x^{p} - x", jx + 1),
            });
        }
        components.push(ComponentReduction {
            component: jx + 1,
            poly: fj.to_string(),
            degree: deg,
            divides_xp_minus_x: divides,
            distinct_roots: distinct,
        });
        reductions.push(fj);
    }

    Ok(PolyQuotientReport {
        report: DecisionReport::finish(verdict, Method::Theorem, witness, 0, t0),
        components,
        total_distinct_roots: total_roots,
        predicted_order: predicted,
        reductions,
    })
}

/// Amalgamation theorem fast path: A⋈^f J is a p-ring iff A is one
/// and J is a p-ideal of B — decided without materializing the
/// amalgamation. Desc validation (including the identity condition)
/// mirrors construction, so an invalid desc errors here exactly when
/// make_amalgamation would.
pub fn amalgamation_is_pring(desc: &AmalgDesc, p: u64, limits: &Limits) -> Result<DecisionReport> {
    let t0 = Instant::now();
    require_prime(p)?;
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
    let b = &desc.b;
    let f1 = desc.hom.apply_idx(desc.a.one_idx());
    for a_idx in 0..desc.a.order() {
        let fa = desc.hom.apply_idx(a_idx);
        for &j in &j_elems {
            let v = b.add_idx(fa, j);
            if b.mul_idx(f1, v) != v {
                return Err(RingError::IdentityCondition(format!(
                    "f(1)·(f(a)+j) != f(a)+j at a = {}, j = {}",
                    desc.a.element_string(a_idx),
                    b.element_string(j)
                )));
            }
        }
    }
    let a_report = is_p_ring_theorem(&desc.a, p, limits)?;
    if !a_report.verdict {
        let w = a_report.witness.map(|w| Witness {
            index: w.index,
            element: w.element,
            reason: format!("A is not a {p}-ring: {}", w.reason),
        });
        return Ok(DecisionReport::finish(false, Method::Theorem, w, a_report.checked, t0));
    }
    let j_report = is_p_ideal(&desc.j, p, limits)?;
    if !j_report.verdict {
        let w = j_report.witness.map(|w| Witness {
            index: w.index,
            element: w.element,
            reason: format!("J is not a {p}-ideal of B: {}", w.reason),
        });
        return Ok(DecisionReport::finish(false, Method::Theorem, w, j_report.checked, t0));
    }
    Ok(DecisionReport::finish(true, Method::Theorem, None, j_report.checked, t0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtMode {
    Pring,
    Vnr,
}

/// Trivial-extension theorem fast path, both directions: A∝E is a
/// p-ring (resp. von Neumann regular) iff A is and E = {0}. Decided
/// without materializing the extension; for the vnr mode on an
/// amalgamation-shaped base without a structural criterion, the base
/// check falls back to the (guarded) oracle.
pub fn trivial_ext_check(
    a: &Arc<FiniteRing>,
    module: &crate::constructions::ModuleDesc,
    p: u64,
    mode: ExtMode,
    limits: &Limits,
) -> Result<DecisionReport> {
    let t0 = Instant::now();
    if module.base() != a {
        return Err(RingError::InvalidParameter(
            "module is not over the given base ring".into(),
        ));
    }
    let (a_ok, a_witness) = match mode {
        ExtMode::Pring => {
            require_prime(p)?;
            let r = is_p_ring_theorem(a, p, limits)?;
            (r.verdict, r.witness)
        }
        ExtMode::Vnr => match is_vnr_theorem(a)? {
            Some(v) => (v, None),
            None => {
                let r = is_vnr_oracle(a, limits)?;
                (r.verdict, r.witness)
            }
        },
    };
    if !a_ok {
        let w = a_witness.unwrap_or_else(|| Witness {
            index: 0,
            element: a.element_string(0),
            reason: "base ring fails the mode condition".into(),
        });
        return Ok(DecisionReport::finish(
            false,
            Method::Theorem,
            Some(Witness {
                index: w.index,
                element: format!("({}, 0)", w.element),
                reason: format!("base ring A fails: {}", w.reason),
            }),
            0,
            t0,
        ));
    }
    if module.size() > 1 {
        let index = a.order(); // (0, e₁)
        let reason = match mode {
            ExtMode::Pring => format!("(0,e)^{p} = 0 != (0,e) for a nonzero module element"),
            ExtMode::Vnr => "(0,e)² = 0, so no b gives (0,e) = (0,e)²b".to_string(),
        };
        return Ok(DecisionReport::finish(
            false,
            Method::Theorem,
            Some(Witness {
                index,
                element: format!("(0, e)"),
                reason,
            }),
            0,
            t0,
        ));
    }
    Ok(DecisionReport::finish(true, Method::Theorem, None, 0, t0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{make_amalgamation, make_duplication, ModuleDesc};
    use crate::hom::scale_first_component_hom;
    use crate::ring::{make_prime_field, make_product, make_zmod};

    fn limits() -> Limits {
        Limits::default()
    }

    fn poly(p: u64, coeffs: &[i64]) -> FpPoly {
        FpPoly::new(p, coeffs).unwrap()
    }

    fn f2_squared() -> Arc<FiniteRing> {
        let f2 = make_prime_field(2).unwrap();
        make_product(&[f2.clone(), f2]).unwrap()
    }

    #[test]
    fn p_ring_oracle_examples() {
        let r = f2_squared();
        assert!(is_p_ring_oracle(&r, 2, &limits()).unwrap().verdict);

        let z4 = make_zmod(4).unwrap();
        let rep = is_p_ring_oracle(&z4, 2, &limits()).unwrap();
        assert!(!rep.verdict);
        let w = rep.witness.unwrap();
        assert_eq!(w.index, 2); // 2² = 0 != 2

        for p in [2u64, 3, 5, 7] {
            let f = make_prime_field(p).unwrap();
            assert!(is_p_ring_oracle(&f, p, &limits()).unwrap().verdict);
        }

        assert!(is_p_ring_oracle(&z4, 4, &limits()).is_err()); // composite p
    }

    #[test]
    fn vnr_oracle_examples() {
        let z6 = make_zmod(6).unwrap();
        assert!(is_vnr_oracle(&z6, &limits()).unwrap().verdict);

        let z4 = make_zmod(4).unwrap();
        let rep = is_vnr_oracle(&z4, &limits()).unwrap();
        assert!(!rep.verdict);
        assert_eq!(rep.witness.unwrap().index, 2);

        // in any p-ring, b = a (p=2) or a^{p-2} (p>2) certifies regularity
        for p in [2u64, 3, 5] {
            let f = make_prime_field(p).unwrap();
            assert!(is_vnr_oracle(&f, &limits()).unwrap().verdict);
            for a in 0..p {
                let b = if p == 2 { a } else { f.pow_idx(a, p - 2) };
                assert_eq!(f.mul_idx(f.mul_idx(a, a), b), a);
            }
        }
    }

    #[test]
    fn p_ideal_examples() {
        let z60 = make_zmod(60).unwrap();
        let i20 = IdealDesc::zmod(&z60, 20).unwrap();
        assert!(is_p_ideal(&i20, 3, &limits()).unwrap().verdict);
        assert!(is_p_ideal(&IdealDesc::zero(&z60), 7, &limits()).unwrap().verdict);

        let z6 = make_zmod(6).unwrap();
        let i3 = IdealDesc::zmod(&z6, 3).unwrap();
        assert!(is_p_ideal(&i3, 2, &limits()).unwrap().verdict);

        // 12Z/60Z is a 5-ideal but not a 3-ideal
        let i12 = IdealDesc::zmod(&z60, 12).unwrap();
        assert!(is_p_ideal(&i12, 5, &limits()).unwrap().verdict);
        assert!(!is_p_ideal(&i12, 3, &limits()).unwrap().verdict);
    }

    #[test]
    fn ideal_enumeration_counts() {
        let z60 = make_zmod(60).unwrap();
        assert_eq!(enumerate_ideals_oracle(&z60, &limits()).unwrap().len(), 12);

        let r = f2_squared();
        assert_eq!(enumerate_ideals_oracle(&r, &limits()).unwrap().len(), 4);

        let f7 = make_prime_field(7).unwrap();
        let ideals = enumerate_ideals_oracle(&f7, &limits()).unwrap();
        assert_eq!(ideals.len(), 2);
        assert!(ideals[0].is_zero_ideal());
        assert_eq!(ideals[1].size(), 7);
    }

    #[test]
    fn zmod_p_ideal_fast_path() {
        let i3 = p_ideals_of_zmod(60, 3).unwrap();
        assert_eq!(i3.len(), 2);
        assert_eq!(i3[1].to_string(), "20Z/60Z");

        let i5 = p_ideals_of_zmod(60, 5).unwrap();
        assert_eq!(i5.len(), 2);
        assert_eq!(i5[1].to_string(), "12Z/60Z");

        let i2 = p_ideals_of_zmod(60, 2).unwrap();
        assert_eq!(i2.len(), 1);
        assert!(i2[0].is_zero_ideal());
    }

    #[test]
    fn zmod_fast_path_matches_oracle_on_small_n() {
        for n in 2..=40u64 {
            let ring = make_zmod(n).unwrap();
            for p in [2u64, 3, 5] {
                let fast: Vec<Vec<u64>> = p_ideals_of_zmod(n, p)
                    .unwrap()
                    .iter()
                    .map(|i| i.expand(&limits()).unwrap())
                    .collect();
                let slow: Vec<Vec<u64>> = list_p_ideals_oracle(&ring, p, &limits())
                    .unwrap()
                    .iter()
                    .map(|i| i.expand(&limits()).unwrap())
                    .collect();
                assert_eq!(fast, slow, "n={n} p={p}");
            }
        }
    }

    #[test]
    fn quotient_p_ideal_fast_path() {
        assert!(quotient_has_p_ideal(2, &poly(2, &[0, 1, 1])).unwrap().verdict);
        assert!(!quotient_has_p_ideal(2, &poly(2, &[1, 0, 1])).unwrap().verdict);
        assert!(!quotient_has_p_ideal(2, &poly(2, &[1, 1, 1])).unwrap().verdict);
    }

    #[test]
    fn mccoy_on_f2_squared() {
        let r = f2_squared();
        let d = mccoy_decompose(&r, 2, &limits()).unwrap();
        assert_eq!(d.n, 2);
        assert_eq!(d.ideal_count, 4);
        assert!(d.order_check);
        assert!(d.iso.is_bijective());
        for h in &d.projections {
            assert!(h.is_surjective());
        }
    }

    #[test]
    fn mccoy_on_prime_fields() {
        for p in [2u64, 3, 5] {
            let f = make_prime_field(p).unwrap();
            let d = mccoy_decompose(&f, p, &limits()).unwrap();
            assert_eq!(d.n, 1);
            assert_eq!(d.ideal_count, 2);
        }
    }

    #[test]
    fn mccoy_on_the_worked_amalgamation() {
        let f2 = make_prime_field(2).unwrap();
        let a = make_product(&[f2.clone(), f2]).unwrap();
        let b = make_zmod(6).unwrap();
        let hom = scale_first_component_hom(&a, &b, 3).unwrap();
        let j = IdealDesc::generated_by(&b, &[3], &limits()).unwrap();
        let desc = AmalgDesc::new(&a, &b, hom, j).unwrap();
        let ring = make_amalgamation(&desc, &limits()).unwrap();
        let d = mccoy_decompose(&ring, 2, &limits()).unwrap();
        assert_eq!(d.n, 3);
        assert_eq!(d.ideal_count, 8);
    }

    #[test]
    fn mccoy_rejects_non_p_rings() {
        let z4 = make_zmod(4).unwrap();
        assert!(matches!(
            mccoy_decompose(&z4, 2, &limits()),
            Err(RingError::Precondition(_))
        ));
    }

    #[test]
    fn structural_projections_work_above_the_oracle_cap() {
        let f17 = make_prime_field(17).unwrap();
        let r = make_product(&[f17.clone(), f17.clone(), f17.clone(), f17]).unwrap();
        assert!(r.order() > limits().oracle_max);
        let projs = fp_projections(&r, 17, &limits()).unwrap();
        assert_eq!(projs.len(), 4);
        for proj in &projs {
            assert_eq!(proj.apply(r.one_idx()), 1);
            assert_eq!(proj.apply(0), 0);
        }
        // spot-check against product_decode
        let idx = r.product_encode(&[3, 0, 16, 7]).unwrap();
        let vals: Vec<u64> = projs.iter().map(|pr| pr.apply(idx)).collect();
        assert_eq!(vals, vec![3, 0, 16, 7]);
    }

    #[test]
    fn poly_quotient_fast_path() {
        let f3 = make_prime_field(3).unwrap();
        let f = PolyOverRing::new(&f3, &[0, 2, 1]).unwrap(); // x² - x
        let rep = pring_poly_quotient_is_pring(&f3, &f, 3, &limits()).unwrap();
        assert!(rep.report.verdict);
        assert_eq!(rep.total_distinct_roots, 2);
        assert_eq!(rep.predicted_order, Some(9));

        let r = f2_squared();
        let g = PolyOverRing::new(&r, &[1, 3, 3]).unwrap(); // f₁ = x²+x+1
        let rep = pring_poly_quotient_is_pring(&r, &g, 2, &limits()).unwrap();
        assert!(!rep.report.verdict);
        assert_eq!(rep.report.witness.as_ref().unwrap().index, 1);
        assert!(!rep.components[0].divides_xp_minus_x);
        assert!(rep.components[1].divides_xp_minus_x);

        let z4 = make_zmod(4).unwrap();
        let h = PolyOverRing::new(&z4, &[0, 1]).unwrap();
        assert!(matches!(
            pring_poly_quotient_is_pring(&z4, &h, 2, &limits()),
            Err(RingError::Precondition(_))
        ));
    }

    #[test]
    fn amalgamation_fast_path() {
        let f2 = make_prime_field(2).unwrap();
        let a = make_product(&[f2.clone(), f2.clone()]).unwrap();
        let b = make_zmod(6).unwrap();
        let hom = scale_first_component_hom(&a, &b, 3).unwrap();
        let j = IdealDesc::generated_by(&b, &[3], &limits()).unwrap();
        let desc = AmalgDesc::new(&a, &b, hom, j).unwrap();
        let rep = amalgamation_is_pring(&desc, 2, &limits()).unwrap();
        assert!(rep.verdict);
        assert_eq!(rep.method, Method::Theorem);

        // A = Z/4 fails regardless of B and J
        let z4 = make_zmod(4).unwrap();
        let desc = AmalgDesc::new(
            &z4,
            &z4,
            crate::hom::identity_hom(&z4),
            IdealDesc::zmod(&z4, 2).unwrap(),
        )
        .unwrap();
        let rep = amalgamation_is_pring(&desc, 2, &limits()).unwrap();
        assert!(!rep.verdict);
        assert!(rep.witness.unwrap().reason.contains("A is not a 2-ring"));
    }

    #[test]
    fn duplication_matches_corollary() {
        // A a p-ring: every ideal gives a p-ring duplication
        let a = f2_squared();
        for ideal in enumerate_ideals_oracle(&a, &limits()).unwrap() {
            let dup = make_duplication(&a, &ideal, &limits()).unwrap();
            assert!(is_p_ring_oracle(&dup, 2, &limits()).unwrap().verdict);
        }
    }

    #[test]
    fn trivial_ext_fast_path() {
        let f2 = make_prime_field(2).unwrap();
        let zero = ModuleDesc::zero(&f2);
        assert!(trivial_ext_check(&f2, &zero, 2, ExtMode::Pring, &limits())
            .unwrap()
            .verdict);

        let e = ModuleDesc::free(&f2, 1, &limits()).unwrap();
        assert!(!trivial_ext_check(&f2, &e, 2, ExtMode::Pring, &limits())
            .unwrap()
            .verdict);

        let z6 = make_zmod(6).unwrap();
        let zero6 = ModuleDesc::zero(&z6);
        assert!(trivial_ext_check(&z6, &zero6, 2, ExtMode::Vnr, &limits())
            .unwrap()
            .verdict);
        let e6 = ModuleDesc::free(&z6, 1, &limits()).unwrap();
        assert!(!trivial_ext_check(&z6, &e6, 2, ExtMode::Vnr, &limits())
            .unwrap()
            .verdict);
    }

    #[test]
    fn theorem_matches_oracle_spot_checks() {
        let rings: Vec<Arc<FiniteRing>> = vec![
            make_zmod(2).unwrap(),
            make_zmod(3).unwrap(),
            make_zmod(4).unwrap(),
            make_zmod(6).unwrap(),
            f2_squared(),
            crate::quotient::make_quotient(2, &poly(2, &[0, 1, 1]), &limits()).unwrap(),
            crate::quotient::make_quotient(2, &poly(2, &[1, 1, 1]), &limits()).unwrap(),
        ];
        for ring in &rings {
            for p in [2u64, 3] {
                let thm = is_p_ring_theorem(ring, p, &limits()).unwrap();
                let orc = is_p_ring_oracle(ring, p, &limits()).unwrap();
                assert_eq!(thm.verdict, orc.verdict, "{} p={p}", ring.describe());
                if !thm.verdict {
                    // the theorem witness must be a real counterexample
                    let w = thm.witness.unwrap();
                    let ok = ring.pow_idx(w.index, p) == w.index
                        && ring.int_mul_idx(p as i64, w.index) == 0;
                    assert!(!ok, "witness {} is not a counterexample", w.index);
                }
            }
            let vt = is_vnr_theorem(ring).unwrap();
            if let Some(v) = vt {
                assert_eq!(v, is_vnr_oracle(ring, &limits()).unwrap().verdict);
            }
        }
    }

    #[test]
    fn every_p_ring_is_vnr_and_all_ideals_are_p_ideals() {
        let rings = vec![
            f2_squared(),
            crate::quotient::make_quotient(2, &poly(2, &[0, 1, 1]), &limits()).unwrap(),
            make_prime_field(3).unwrap(),
        ];
        for ring in rings {
            let p = ring.characteristic();
            assert!(is_p_ring_oracle(&ring, p, &limits()).unwrap().verdict);
            assert!(is_vnr_oracle(&ring, &limits()).unwrap().verdict);
            for ideal in enumerate_ideals_oracle(&ring, &limits()).unwrap() {
                assert!(is_p_ideal(&ideal, p, &limits()).unwrap().verdict);
            }
        }
    }
}
