//! Evaluates a parsed [`RingExpr`] into a [`FiniteRing`], resolving
//! hom and action-table file references and attaching source spans to
//! every failure.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::constructions::{make_amalgamation, make_duplication, make_trivial_extension, AmalgDesc, ModuleDesc};
use crate::decision::{fp_projections, is_p_ring_theorem, reduce_with_projection};
use crate::dsl::{Coeff, HomSpec, IdealSpec, ModuleSpec, PolyAst, RingExpr, Span};
use crate::error::RingError;
use crate::hom::{identity_hom, make_hom, scale_first_component_hom, RingHom};
use crate::ideal::IdealDesc;
use crate::poly::FpPoly;
use crate::quotient::{assemble_quotient_product, make_quotient, PolyOverRing};
use crate::ring::{make_prime_field, make_product, make_zmod, FiniteRing, Limits, RingKind};

#[derive(Clone, Debug)]
pub struct EvalError {
    pub span: Span,
    pub message: String,
    pub size_guard: bool,
}

impl std::fmt::Display for EvalError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "error at bytes {}..{}: {}",
            self.span.start, self.span.end, self.message
        )
    }
}

impl std::error::Error for EvalError {}

fn err_at(span: Span, e: RingError) -> EvalError {
    EvalError {
        span,
        size_guard: e.is_size_guard(),
        message: e.to_string(),
    }
}

fn msg_at(span: Span, message: impl Into<String>) -> EvalError {
    EvalError {
        span,
        message: message.into(),
        size_guard: false,
    }
}

type EResult<T> = std::result::Result<T, EvalError>;

/// Evaluation environment: size limits and the directory against
/// which `@file` and `Z/m:file` references are resolved.
#[derive(Clone, Debug)]
pub struct EvalContext {
    pub limits: Limits,
    pub base_dir: PathBuf,
}

impl Default for EvalContext {
    fn default() -> Self {
        EvalContext {
            limits: Limits::default(),
            base_dir: PathBuf::from("."),
        }
    }
}

impl EvalContext {
    pub fn with_limits(limits: Limits) -> Self {
        EvalContext {
            limits,
            base_dir: PathBuf::from("."),
        }
    }
}

pub fn eval_ring_expr(expr: &RingExpr, ctx: &EvalContext) -> EResult<Arc<FiniteRing>> {
    match expr {
        RingExpr::Zmod { n, span } => make_zmod(*n).map_err(|e| err_at(*span, e)),
        RingExpr::GF { p, span } => make_prime_field(*p).map_err(|e| err_at(*span, e)),
        RingExpr::Product { factors, span } => {
            let rings = factors
                .iter()
                .map(|f| eval_ring_expr(f, ctx))
                .collect::<EResult<Vec<_>>>()?;
            make_product(&rings).map_err(|e| err_at(*span, e))
        }
        RingExpr::Quotient { base, poly, span } => {
            let base_ring = eval_ring_expr(base, ctx)?;
            eval_quotient(&base_ring, base.span(), poly, *span, ctx)
        }
        RingExpr::Triv { base, module, span } => {
            let base_ring = eval_ring_expr(base, ctx)?;
            let desc = eval_module(&base_ring, module, ctx)?;
            make_trivial_extension(&base_ring, &desc, &ctx.limits).map_err(|e| err_at(*span, e))
        }
        RingExpr::Amalg { a, b, hom, ideal, span } => {
            let ring_a = eval_ring_expr(a, ctx)?;
            let ring_b = eval_ring_expr(b, ctx)?;
            let hom = eval_hom(&ring_a, &ring_b, hom, ctx)?;
            let j = eval_ideal(&ring_b, ideal, ctx)?;
            let desc = AmalgDesc::new(&ring_a, &ring_b, hom, j).map_err(|e| err_at(*span, e))?;
            make_amalgamation(&desc, &ctx.limits).map_err(|e| err_at(*span, e))
        }
        RingExpr::Dup { base, ideal, span } => {
            let ring = eval_ring_expr(base, ctx)?;
            let i = eval_ideal(&ring, ideal, ctx)?;
            make_duplication(&ring, &i, &ctx.limits).map_err(|e| err_at(*span, e))
        }
    }
}

/// Convenience wrapper: parse then evaluate, folding parse errors into
/// span-bearing eval errors.
pub fn eval_str(text: &str, ctx: &EvalContext) -> EResult<Arc<FiniteRing>> {
    let expr = crate::dsl::parse_ring_expr(text).map_err(|e| EvalError {
        span: Span { start: e.offset, end: e.offset },
        message: e.to_string(),
        size_guard: false,
    })?;
    eval_ring_expr(&expr, ctx)
}

/// Collapses an AST polynomial to an F_p polynomial; tuple
/// coefficients are rejected (they only make sense over products).
pub fn poly_ast_to_fp(poly: &PolyAst, p: u64) -> EResult<FpPoly> {
    let mut digits: Vec<u64> = Vec::new();
    for m in &poly.monomials {
        let c = match &m.coeff {
            Coeff::Int(c) => *c,
            Coeff::Tuple(_) => {
                return Err(msg_at(
                    m.span,
                    "tuple coefficients are only valid over a product coefficient ring",
                ))
            }
        };
        let k = m.power as usize;
        if digits.len() <= k {
            digits.resize(k + 1, 0);
        }
        let reduced = c.rem_euclid(p as i64) as u64;
        digits[k] = (digits[k] + reduced) % p;
    }
    Ok(FpPoly::from_reduced(p, digits))
}

/// Collapses an AST polynomial to a polynomial over an arbitrary
/// coefficient ring. Integer coefficients map to c·1; a tuple binds
/// componentwise to a top-level product's factor order.
pub fn poly_ast_to_elements(poly: &PolyAst, ring: &Arc<FiniteRing>) -> EResult<PolyOverRing> {
    let mut coeffs: Vec<u64> = Vec::new();
    for m in &poly.monomials {
        let idx = match &m.coeff {
            Coeff::Int(c) => ring.int_mul_idx(*c, ring.one_idx()),
            Coeff::Tuple(vals) => match ring.kind() {
                RingKind::Product { factors } => {
                    if factors.len() != vals.len() {
                        return Err(msg_at(
                            m.span,
                            format!(
                                "tuple arity {} does not match product arity {}",
                                vals.len(),
                                factors.len()
                            ),
                        ));
                    }
                    let comps: Vec<u64> = factors
                        .iter()
                        .zip(vals)
                        .map(|(f, &v)| f.int_mul_idx(v, f.one_idx()))
                        .collect();
                    ring.product_encode(&comps).map_err(|e| err_at(m.span, e))?
                }
                _ => {
                    return Err(msg_at(
                        m.span,
                        "tuple coefficient over a non-product coefficient ring",
                    ))
                }
            },
        };
        let k = m.power as usize;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, 0);
        }
        coeffs[k] = ring.add_idx(coeffs[k], idx);
    }
    PolyOverRing::new(ring, &coeffs).map_err(|e| err_at(poly.span, e))
}

fn eval_quotient(
    base: &Arc<FiniteRing>,
    base_span: Span,
    poly: &PolyAst,
    span: Span,
    ctx: &EvalContext,
) -> EResult<Arc<FiniteRing>> {
    // F_p base (either spelling): the classic F_p[x]/(f)
    let fp_base = match base.kind() {
        RingKind::PrimeField { p } => Some(*p),
        RingKind::Zmod { n } if crate::arith::is_prime(*n) => Some(*n),
        _ => None,
    };
    if let Some(p) = fp_base {
        let f = poly_ast_to_fp(poly, p)?;
        return make_quotient(p, &f, &ctx.limits).map_err(|e| err_at(span, e));
    }

    // otherwise R must be a p-ring; R[x]/(f) is represented through
    // its reductions as the product of F_p[x]/(f_j)
    let p = base.characteristic();
    if !crate::arith::is_prime(p)
        || !is_p_ring_theorem(base, p, &ctx.limits)
            .map_err(|e| err_at(base_span, e))?
            .verdict
    {
        return Err(msg_at(
            base_span,
            format!(
                "coefficient ring {} is not a p-ring; R[x]/(f) is only supported over F_p or a p-ring",
                base.describe()
            ),
        ));
    }
    let f = poly_ast_to_elements(poly, base)?;
    let projections = fp_projections(base, p, &ctx.limits).map_err(|e| err_at(base_span, e))?;
    let reductions: Vec<FpPoly> = projections
        .iter()
        .map(|proj| reduce_with_projection(&f, proj))
        .collect();
    let assembled =
        assemble_quotient_product(p, &reductions, &ctx.limits).map_err(|e| err_at(span, e))?;
    Ok(assembled.ring)
}

fn eval_module(base: &Arc<FiniteRing>, spec: &ModuleSpec, ctx: &EvalContext) -> EResult<ModuleDesc> {
    match spec {
        ModuleSpec::Zero { .. } => Ok(ModuleDesc::zero(base)),
        ModuleSpec::Free { k, span } => {
            ModuleDesc::free(base, *k, &ctx.limits).map_err(|e| err_at(*span, e))
        }
        ModuleSpec::Cyclic { m, file, span } => {
            let size = base
                .order()
                .checked_mul(*m)
                .ok_or_else(|| msg_at(*span, "action table size overflows u64"))?;
            ctx.limits
                .check_materialize(size, "action table")
                .map_err(|e| err_at(*span, e))?;
            let pairs = load_arrow_file(&ctx.base_dir, file, *span)?;
            let table = pairs_to_table(pairs, size, "action table", file, *span)?;
            ModuleDesc::cyclic_with_table(base, *m, table, &ctx.limits).map_err(|e| err_at(*span, e))
        }
    }
}

fn eval_hom(
    a: &Arc<FiniteRing>,
    b: &Arc<FiniteRing>,
    spec: &HomSpec,
    ctx: &EvalContext,
) -> EResult<RingHom> {
    match spec {
        HomSpec::Id { span } => {
            if a != b {
                return Err(msg_at(
                    *span,
                    format!(
                        "the id hom needs matching rings, got {} and {}",
                        a.describe(),
                        b.describe()
                    ),
                ));
            }
            Ok(identity_hom(a))
        }
        HomSpec::Scale0 { k, span } => {
            scale_first_component_hom(a, b, *k).map_err(|e| err_at(*span, e))
        }
        HomSpec::File { path, span } => {
            ctx.limits
                .check_materialize(a.order(), "hom table")
                .map_err(|e| err_at(*span, e))?;
            let pairs = load_arrow_file(&ctx.base_dir, path, *span)?;
            let table = pairs_to_table(pairs, a.order(), "hom table", path, *span)?;
            make_hom(a, b, table).map_err(|e| err_at(*span, e))
        }
    }
}

fn eval_ideal(ring: &Arc<FiniteRing>, spec: &IdealSpec, ctx: &EvalContext) -> EResult<IdealDesc> {
    let mut gens = Vec::with_capacity(spec.generators.len());
    for &g in &spec.generators {
        if g < 0 || g as u64 >= ring.order() {
            return Err(msg_at(
                spec.span,
                format!(
                    "ideal generator {g} is not an element index of {} (order {})",
                    ring.describe(),
                    ring.order()
                ),
            ));
        }
        gens.push(g as u64);
    }
    IdealDesc::generated_by(ring, &gens, &ctx.limits).map_err(|e| err_at(spec.span, e))
}

/// `lhs -> rhs` records, one per line; '#' comments and blank lines
/// are skipped.
fn load_arrow_file(base_dir: &Path, file: &str, span: Span) -> EResult<Vec<(u64, u64)>> {
    let path = base_dir.join(file);
    let text = std::fs::read_to_string(&path)
        .map_err(|e| msg_at(span, format!("cannot read table file {}: {e}", path.display())))?;
    let mut pairs = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (lhs, rhs) = line.split_once("->").ok_or_else(|| {
            msg_at(
                span,
                format!("{file}:{}: expected 'src -> tgt', got {line:?}", lineno + 1),
            )
        })?;
        let parse = |s: &str, what: &str| -> EResult<u64> {
            s.trim().parse::<u64>().map_err(|_| {
                msg_at(
                    span,
                    format!("{file}:{}: {what} {:?} is not a number", lineno + 1, s.trim()),
                )
            })
        };
        pairs.push((parse(lhs, "source")?, parse(rhs, "target")?));
    }
    Ok(pairs)
}

fn pairs_to_table(
    pairs: Vec<(u64, u64)>,
    len: u64,
    what: &str,
    file: &str,
    span: Span,
) -> EResult<Vec<u64>> {
    let mut table: Vec<Option<u64>> = vec![None; len as usize];
    for (src, tgt) in pairs {
        if src >= len {
            return Err(msg_at(
                span,
                format!("{file}: {what} source index {src} out of range (need 0..{len})"),
            ));
        }
        if table[src as usize].replace(tgt).is_some() {
            return Err(msg_at(
                span,
                format!("{file}: duplicate entry for source index {src}"),
            ));
        }
    }
    table
        .into_iter()
        .enumerate()
        .map(|(i, t)| t.ok_or_else(|| msg_at(span, format!("{file}: missing entry for source index {i}"))))
        .collect()
}
