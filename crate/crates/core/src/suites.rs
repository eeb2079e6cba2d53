//! Verification suites, the dimension table, and the associativity and
//! commutativity experiments.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::koszul_calculus::tensor_form::{cap_left_tensor, cap_right_tensor, cup_tensor, Extension, TensorChain};
use crate::koszul_calculus::{
    assoc_defect, cap_left, cap_right, cartan_wedge, contraction, cup, cup_with_case, graded_comm_defect, Chain,
    Cochain, ParityCase,
};
use crate::nsym_algebra::{global_dimension, AlgebraElement, NSymAlgebra};
use crate::ratlin::{int, rank_of, subspace_equal, SparseVector};
use crate::report::{Label, Record, Status};
use crate::serial::cochain_to_json;
use crate::shuffle::{check_pqant1, check_pqant2};
use crate::tensorspace::{
    ant_image_basis, ant_kernel_basis, ant_kernel_generators, ant_rank, binomial, increasing_tuples, slot_intersection,
    word_count, TensorElement,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub n: usize,
    pub big_n: usize,
    pub max_degree: usize,
    pub seed: u64,
    pub samples: usize,
}

impl SuiteConfig {
    pub fn context(&self) -> Result<Arc<NSymAlgebra>> {
        NSymAlgebra::new(self.n, self.big_n)
    }

    pub fn to_json(&self) -> Value {
        json!({"n": self.n, "N": self.big_n, "max_degree": self.max_degree, "seed": self.seed, "samples": self.samples})
    }

    /// Independent seeds for the random operands, drawn in a fixed order.
    fn seeds(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Antisym,
    Wspace,
    Shuffle,
    Prop1,
    Euler,
    Cartan,
    Vanishing,
    Welldef,
    All,
}

impl Suite {
    pub const EACH: [Suite; 8] = [
        Suite::Antisym,
        Suite::Wspace,
        Suite::Shuffle,
        Suite::Prop1,
        Suite::Euler,
        Suite::Cartan,
        Suite::Vanishing,
        Suite::Welldef,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Antisym => "antisym",
            Suite::Wspace => "wspace",
            Suite::Shuffle => "shuffle",
            Suite::Prop1 => "prop1",
            Suite::Euler => "euler",
            Suite::Cartan => "cartan",
            Suite::Vanishing => "vanishing",
            Suite::Welldef => "welldef",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.as_str() == s)
            .ok_or_else(|| Error::InvalidParameters(format!("unknown suite `{s}`")))
    }
}

/// Runs one suite, or every suite for [`Suite::All`] (the `N = 2` comparison
/// only when `N = 2`).
pub fn run_suite(cfg: &SuiteConfig, suite: Suite) -> Result<Vec<Record>> {
    let ctx = cfg.context()?;
    Ok(match suite {
        Suite::Antisym => antisym(cfg),
        Suite::Wspace => wspace(&ctx, cfg),
        Suite::Shuffle => shuffle(cfg),
        Suite::Prop1 => prop1(&ctx),
        Suite::Euler => euler(&ctx, cfg),
        Suite::Cartan => cartan(&ctx, cfg)?,
        Suite::Vanishing => vanishing(&ctx, cfg),
        Suite::Welldef => welldef(&ctx, cfg),
        Suite::All => {
            let mut out = Vec::new();
            for s in Suite::EACH {
                if s == Suite::Cartan && cfg.big_n != 2 {
                    continue;
                }
                out.extend(run_suite(cfg, s)?);
            }
            out
        }
    })
}

fn sparse(ts: &[TensorElement]) -> Vec<SparseVector> {
    ts.iter().map(TensorElement::to_sparse).collect()
}

fn antisym(cfg: &SuiteConfig) -> Vec<Record> {
    let n = cfg.n;
    let mut out = Vec::new();
    let ant2 = sparse(&ant_image_basis(2, n));
    for p in 2..=cfg.max_degree {
        let params = json!({"n": n, "p": p});
        let rank = ant_rank(p, n);
        let expected = binomial(n, p);
        out.push(Record::new(
            "antisym",
            "ant-image-dimension",
            Label::Eq3,
            params.clone(),
            Status::from_bool(rank == expected),
            json!({"rank": rank, "expected": expected}),
        ));

        let size = word_count(n, p);
        let image = sparse(&ant_image_basis(p, n));
        let intersection = slot_intersection(&ant2, 2, p, n);
        out.push(Record::new(
            "antisym",
            "image-is-intersection",
            Label::Eq1,
            params.clone(),
            Status::from_bool(subspace_equal(&image, &intersection, size)),
            json!({"dim": rank_of(&intersection)}),
        ));

        let kernel = ant_kernel_basis(p, n);
        let generated = sparse(&ant_kernel_generators(p, n));
        out.push(Record::new(
            "antisym",
            "kernel-is-generated",
            Label::Eq2,
            params,
            Status::from_bool(subspace_equal(&kernel, &generated, size)),
            json!({"dim": kernel.len()}),
        ));
    }
    out
}

fn wspace(ctx: &Arc<NSymAlgebra>, cfg: &SuiteConfig) -> Vec<Record> {
    let (n, big_n) = (ctx.n(), ctx.big_n());
    (0..=cfg.max_degree)
        .map(|p| {
            let size = word_count(n, p);
            let by_intersection = sparse(&ctx.w_space_by_intersection(p));
            let closed = sparse(&ctx.w_space(p));
            let (regime, expected) = if p < big_n {
                ("tensor-power", size)
            } else if p <= n {
                ("ant-image", binomial(n, p))
            } else {
                ("zero", 0)
            };
            let dim = rank_of(&by_intersection);
            let ok = dim == expected && subspace_equal(&by_intersection, &closed, size);
            Record::new(
                "wspace",
                "w-space-closed-form",
                Label::SpaceWp,
                json!({"n": n, "N": big_n, "p": p}),
                Status::from_bool(ok),
                json!({"dim": dim, "expected": expected, "regime": regime}),
            )
        })
        .collect()
}

fn shuffle(cfg: &SuiteConfig) -> Vec<Record> {
    let n = cfg.n;
    let mut out = Vec::new();
    for m in 0..=cfg.max_degree {
        for a in 0..=m {
            let b = m - a;
            out.push(Record::new(
                "shuffle",
                "ant-shuffle-decomposition",
                Label::Pqant1,
                json!({"n": n, "a": a, "b": b}),
                Status::from_bool(check_pqant1(a, b, n)),
                json!({"vacuous": m > n}),
            ));
        }
    }
    for m in 0..=cfg.max_degree {
        let mut failures = Vec::new();
        let mut cases = 0;
        for_compositions(m, 5, &mut |parts| {
            cases += 1;
            if !check_pqant2(parts[0], parts[1], parts[2], parts[3], parts[4], n) {
                failures.push(json!(parts));
            }
        });
        out.push(Record::new(
            "shuffle",
            "ant-block-shuffle-decomposition",
            Label::Pqant2,
            json!({"n": n, "length": m}),
            Status::from_bool(failures.is_empty()),
            json!({"cases": cases, "failures": failures, "vacuous": m > n}),
        ));
    }
    out
}

/// Every way to write `total` as an ordered sum of `k` naturals.
fn for_compositions(total: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(left: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() + 1 == k {
            cur.push(left);
            f(cur);
            cur.pop();
            return;
        }
        for x in 0..=left {
            cur.push(x);
            rec(left - x, k, cur, f);
            cur.pop();
        }
    }
    rec(total, k, &mut Vec::with_capacity(k), f);
}

fn prop1(ctx: &Arc<NSymAlgebra>) -> Vec<Record> {
    let (n, big_n) = (ctx.n(), ctx.big_n());
    let d = ctx.global_dimension();
    let mut out = Vec::new();
    for p in 0..=d + 2 {
        let len = ctx.nu(p);
        let dim = rank_of(&sparse(&ctx.w_space_by_intersection(len)));
        out.push(Record::new(
            "prop1",
            "w-nu-vanishing",
            Label::Prop1D,
            json!({"n": n, "N": big_n, "p": p}),
            Status::from_bool((dim > 0) == (p <= d)),
            json!({"nu": len, "dim": dim, "d": d}),
        ));
    }
    if big_n == 2 {
        out.push(Record::new(
            "prop1",
            "quadratic-d-equals-n",
            Label::Prop1D,
            json!({"n": n, "N": big_n}),
            Status::from_bool(d == n),
            json!({"d": d}),
        ));
    }
    out
}

fn euler(ctx: &Arc<NSymAlgebra>, cfg: &SuiteConfig) -> Vec<Record> {
    let dims = ctx.hilbert_dims(cfg.max_degree);
    ctx.euler_sums(cfg.max_degree)
        .into_iter()
        .enumerate()
        .map(|(m, sum)| {
            Record::new(
                "euler",
                "alternating-dimension-sum",
                Label::Euler,
                json!({"n": ctx.n(), "N": ctx.big_n(), "m": m}),
                Status::from_bool(sum == i128::from(m == 0)),
                json!({"dim": dims[m], "sum": sum.to_string()}),
            )
        })
        .collect()
}

fn cup_label(p: usize, q: usize) -> Label {
    match ParityCase::for_cup(p, q) {
        ParityCase::Concatenation => Label::Cup1,
        ParityCase::Spread => Label::Cup2,
    }
}

fn cap_labels(p: usize, q: usize) -> (Label, Label) {
    match ParityCase::for_cap(p, q) {
        ParityCase::Concatenation => (Label::LeftCap1, Label::RightCap1),
        ParityCase::Spread => (Label::LeftCap2, Label::RightCap2),
    }
}

fn sign(e: usize) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Cochain degrees `0..=max_degree` with a nonzero domain.
fn cochain_degrees(ctx: &NSymAlgebra, max_degree: usize) -> Vec<usize> {
    (0..=max_degree).filter(|&p| ctx.nu(p) <= ctx.n()).collect()
}

fn basis_chains(ctx: &Arc<NSymAlgebra>, q: usize) -> Vec<Chain> {
    increasing_tuples(ctx.n(), ctx.nu(q))
        .into_iter()
        .map(|t| Chain::basis(ctx, q, AlgebraElement::one(ctx), t).expect("valid tuple"))
        .collect()
}

/// `N = 2` comparison with the classical Cartan operations, exhaustive over
/// dual-basis cochains and unit chains.
fn cartan(ctx: &Arc<NSymAlgebra>, cfg: &SuiteConfig) -> Result<Vec<Record>> {
    if ctx.big_n() != 2 {
        return Err(Error::RequiresQuadratic(ctx.big_n()));
    }
    let n = ctx.n();
    let degrees = cochain_degrees(ctx, cfg.max_degree);
    let duals: Vec<Vec<Cochain>> = degrees.iter().map(|&p| Cochain::dual_basis_all(ctx, p)).collect();
    let mut out = Vec::new();
    let params2 = |p: usize, q: usize| json!({"n": n, "N": 2, "p": p, "q": q});

    for &p in &degrees {
        for &q in &degrees {
            let (mut wedge_ok, mut comm_ok, mut formula_ok, mut pairs) = (true, true, true, 0);
            for f in &duals[p] {
                for g in &duals[q] {
                    pairs += 1;
                    let fg = cup(f, g)?;
                    wedge_ok &= fg == cartan_wedge(f, g)?.scaled(&int(sign(p * q)));
                    comm_ok &= graded_comm_defect(f, g)?.is_zero();
                    let concatenation = cup_with_case(f, g, ParityCase::Concatenation)?;
                    let spread = cup_with_case(f, g, ParityCase::Spread)?;
                    let relative = if p % 2 == 1 && q % 2 == 1 { 1 } else { -1 };
                    formula_ok &= concatenation == spread.scaled(&int(relative));
                }
            }
            let label = cup_label(p, q);
            out.push(Record::new(
                "cartan",
                "cup-is-signed-cartan-wedge",
                label,
                params2(p, q),
                Status::from_bool(wedge_ok),
                json!({"pairs": pairs, "factor": sign(p * q)}),
            ));
            out.push(Record::new(
                "cartan",
                "graded-commutativity",
                label,
                params2(p, q),
                Status::from_bool(comm_ok),
                json!({"pairs": pairs}),
            ));
            out.push(Record::new(
                "cartan",
                "cup-formulas-coincide",
                Label::Cup2,
                params2(p, q),
                Status::from_bool(formula_ok),
                json!({"pairs": pairs, "both_odd": p % 2 == 1 && q % 2 == 1}),
            ));
        }
    }

    for &p in &degrees {
        for &q in &degrees {
            for &r in &degrees {
                let mut ok = true;
                let mut triples = 0;
                for f in &duals[p] {
                    for g in &duals[q] {
                        for h in &duals[r] {
                            triples += 1;
                            ok &= assoc_defect(f, g, h)?.is_zero();
                        }
                    }
                }
                out.push(Record::new(
                    "cartan",
                    "associativity",
                    assoc_label(p, q, r),
                    json!({"n": n, "N": 2, "p": p, "q": q, "r": r}),
                    Status::from_bool(ok),
                    json!({"triples": triples}),
                ));
            }
        }
    }

    let top_chain = (cfg.max_degree + 1).min(n);
    for &p in &degrees {
        for q in p..=top_chain {
            let chains = basis_chains(ctx, q);
            let mut eps: Option<i64> = None;
            let (mut consistent, mut ratio_ok) = (true, true);
            for f in &duals[p] {
                for z in &chains {
                    let left = cap_left(f, z)?;
                    let classical = contraction(f, z)?;
                    if classical.is_zero() {
                        consistent &= left.is_zero();
                    } else {
                        let s = if left == classical {
                            1
                        } else if left == classical.scaled(&int(-1)) {
                            -1
                        } else {
                            consistent = false;
                            0
                        };
                        consistent &= *eps.get_or_insert(s) == s;
                    }
                    ratio_ok &= cap_right(z, f)? == left.scaled(&int(sign(q * p)));
                }
            }
            let (left_label, right_label) = cap_labels(p, q);
            out.push(Record::new(
                "cartan",
                "cap-is-signed-contraction",
                left_label,
                params2(p, q),
                Status::from_bool(consistent),
                json!({"epsilon": eps}),
            ));
            out.push(Record::new(
                "cartan",
                "right-cap-over-left-cap",
                right_label,
                params2(p, q),
                Status::from_bool(ratio_ok),
                json!({"ratio": sign(q * p)}),
            ));
        }
    }
    Ok(out)
}

/// `cup2` when any of the four products in the associativity defect uses the
/// spread formula.
fn assoc_label(p: usize, q: usize, r: usize) -> Label {
    let spread =
        [(p, q), (p + q, r), (q, r), (p, q + r)].iter().any(|&(a, b)| ParityCase::for_cup(a, b) == ParityCase::Spread);
    if spread {
        Label::Cup2
    } else {
        Label::Cup1
    }
}

/// Dual-basis cochains followed by `samples` random ones of value degree 1.
fn operands(ctx: &Arc<NSymAlgebra>, p: usize, samples: usize, seeds: &mut ChaCha8Rng) -> Vec<Cochain> {
    let mut out = Cochain::dual_basis_all(ctx, p);
    for _ in 0..samples {
        out.push(Cochain::random(ctx, p, 1, seeds.next_u64()).expect("degree has a nonzero domain"));
    }
    out
}

fn chain_operands(ctx: &Arc<NSymAlgebra>, q: usize, samples: usize, seeds: &mut ChaCha8Rng) -> Vec<Chain> {
    let mut out = basis_chains(ctx, q);
    for _ in 0..samples {
        out.push(Chain::random(ctx, q, 1, seeds.next_u64()).expect("degree has a nonzero domain"));
    }
    out
}

fn vanishing(ctx: &Arc<NSymAlgebra>, cfg: &SuiteConfig) -> Vec<Record> {
    let mut seeds = cfg.seeds();
    let degrees = cochain_degrees(ctx, cfg.max_degree);
    let mut out = Vec::new();
    for &p in &degrees {
        let fs = operands(ctx, p, cfg.samples, &mut seeds);
        for q in (0..p).filter(|q| degrees.contains(q)) {
            let zs = chain_operands(ctx, q, cfg.samples, &mut seeds);
            let (mut left_ok, mut right_ok) = (true, true);
            for f in &fs {
                for z in &zs {
                    left_ok &= cap_left(f, z).is_ok_and(|c| c.is_zero());
                    right_ok &= cap_right(z, f).is_ok_and(|c| c.is_zero());
                }
            }
            let params = json!({"n": ctx.n(), "N": ctx.big_n(), "p": p, "q": q});
            let payload = json!({"cases": fs.len() * zs.len()});
            out.push(Record::new(
                "vanishing",
                "left-cap-below-degree",
                Label::LeftCap1,
                params.clone(),
                Status::from_bool(left_ok),
                payload.clone(),
            ));
            out.push(Record::new(
                "vanishing",
                "right-cap-below-degree",
                Label::RightCap1,
                params,
                Status::from_bool(right_ok),
                payload,
            ));
        }
    }
    out
}

fn same_terms(a: &TensorChain, b: &TensorChain) -> bool {
    a.terms().eq(b.terms())
}

/// Wedge-form products against the tensor-level definitions, for both ways
/// of extending a cochain off `W`.
fn welldef(ctx: &Arc<NSymAlgebra>, cfg: &SuiteConfig) -> Vec<Record> {
    let mut seeds = cfg.seeds();
    let degrees = cochain_degrees(ctx, cfg.max_degree);
    let exts = [Extension::IncreasingWord, Extension::Antisymmetric];
    let params = |p: usize, q: usize| json!({"n": ctx.n(), "N": ctx.big_n(), "p": p, "q": q});
    let mut out = Vec::new();
    for &p in &degrees {
        let fs = operands(ctx, p, cfg.samples, &mut seeds);
        for q in (0..=cfg.max_degree - p).filter(|q| degrees.contains(q)) {
            let gs = operands(ctx, q, cfg.samples, &mut seeds);
            let mut ok = true;
            for f in &fs {
                for g in &gs {
                    let direct = cup(f, g).expect("same context");
                    ok &= exts.iter().all(|&e| cup_tensor(f, g, e).expect("same context") == direct);
                }
            }
            out.push(Record::new(
                "welldef",
                "cup-wedge-vs-tensor",
                cup_label(p, q),
                params(p, q),
                Status::from_bool(ok),
                json!({"cases": fs.len() * gs.len()}),
            ));

            let chain_degree = p + q;
            if !degrees.contains(&chain_degree) {
                continue;
            }
            let zs = chain_operands(ctx, chain_degree, cfg.samples, &mut seeds);
            let (mut left_ok, mut right_ok) = (true, true);
            for f in &fs {
                for z in &zs {
                    let left = TensorChain::from_chain(&cap_left(f, z).expect("same context"));
                    let right = TensorChain::from_chain(&cap_right(z, f).expect("same context"));
                    for &e in &exts {
                        left_ok &= same_terms(&cap_left_tensor(f, z, e).expect("same context"), &left);
                        right_ok &= same_terms(&cap_right_tensor(z, f, e).expect("same context"), &right);
                    }
                }
            }
            let (left_label, right_label) = cap_labels(p, chain_degree);
            let payload = json!({"cases": fs.len() * zs.len()});
            out.push(Record::new(
                "welldef",
                "left-cap-wedge-vs-tensor",
                left_label,
                params(p, chain_degree),
                Status::from_bool(left_ok),
                payload.clone(),
            ));
            out.push(Record::new(
                "welldef",
                "right-cap-wedge-vs-tensor",
                right_label,
                params(p, chain_degree),
                Status::from_bool(right_ok),
                payload,
            ));
        }
    }
    out
}

/// Table of `ν(p)`, `dim W_p`, `dim W_{ν(p)}` and `dim A_m`, with the
/// global-dimension and Euler checks as records.
pub fn dims(cfg: &SuiteConfig) -> Result<(Value, Vec<Record>)> {
    let ctx = cfg.context()?;
    let d = global_dimension(ctx.n(), ctx.big_n())?;
    let rows: Vec<Value> = (0..=d + 1)
        .map(|p| {
            let nu = ctx.nu(p);
            json!({
                "p": p,
                "nu": nu,
                "dim_W_p": rank_of(&sparse(&ctx.w_space_by_intersection(p))),
                "dim_W_nu_p": rank_of(&sparse(&ctx.w_space_by_intersection(nu))),
            })
        })
        .collect();
    let table = json!({
        "d": d,
        "w": rows,
        "hilbert": ctx.hilbert_dims(cfg.max_degree),
        "euler_sums": ctx.euler_sums(cfg.max_degree).iter().map(|s| s.to_string()).collect::<Vec<_>>(),
    });
    let mut records = prop1(&ctx);
    records.extend(euler(&ctx, cfg));
    Ok((table, records))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Question {
    Assoc,
    Comm,
}

impl Question {
    pub fn as_str(self) -> &'static str {
        match self {
            Question::Assoc => "assoc",
            Question::Comm => "comm",
        }
    }
}

impl FromStr for Question {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "assoc" => Ok(Question::Assoc),
            "comm" => Ok(Question::Comm),
            other => Err(Error::InvalidParameters(format!("unknown question `{other}`"))),
        }
    }
}

/// Defect tables for the configured `(n, N)` plus `N = 2` control rows on the
/// same `n`. Rows for `N > 2` are reported; control rows must vanish.
///
/// Returns the records and a per-degree summary table.
pub fn experiment(cfg: &SuiteConfig, question: Question) -> Result<(Vec<Record>, Value)> {
    let mut records = Vec::new();
    let mut summary = Vec::new();
    let ctx = cfg.context()?;
    if cfg.big_n != 2 {
        defect_rows(&ctx, cfg, question, "experiment", &mut records, &mut summary);
    }
    let control = NSymAlgebra::new(cfg.n, 2)?;
    defect_rows(&control, cfg, question, "control", &mut records, &mut summary);
    Ok((records, Value::Array(summary)))
}

fn defect_rows(
    ctx: &Arc<NSymAlgebra>,
    cfg: &SuiteConfig,
    question: Question,
    suite: &str,
    records: &mut Vec<Record>,
    summary: &mut Vec<Value>,
) {
    let mut seeds = cfg.seeds();
    let degrees = cochain_degrees(ctx, cfg.max_degree);
    let status = |zero: bool| if ctx.big_n() == 2 { Status::from_bool(zero) } else { Status::Reported };
    let arity = match question {
        Question::Assoc => 3,
        Question::Comm => 2,
    };
    let mut degree_tuples: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..arity {
        degree_tuples = degree_tuples
            .into_iter()
            .flat_map(|t| degrees.iter().map(move |&p| [t.clone(), vec![p]].concat()))
            .collect();
    }
    for ds in degree_tuples {
        let duals: Vec<Vec<Cochain>> = ds.iter().map(|&p| Cochain::dual_basis_all(ctx, p)).collect();
        let mut cases: Vec<(Value, Vec<Cochain>)> = Vec::new();
        for combo in cartesian(&duals) {
            let tuples: Vec<Value> =
                combo.iter().map(|f| json!(f.entries().next().unwrap().0.to_one_based())).collect();
            cases.push((json!({"tuples": tuples}), combo));
        }
        for k in 0..cfg.samples {
            let combo: Vec<Cochain> =
                ds.iter().map(|&p| Cochain::random(ctx, p, 1, seeds.next_u64()).expect("nonzero domain")).collect();
            cases.push((json!({"sample": k}), combo));
        }
        let (mut rows, mut nonzero) = (0, 0);
        for (which, ops) in cases {
            let defect = match question {
                Question::Assoc => assoc_defect(&ops[0], &ops[1], &ops[2]),
                Question::Comm => graded_comm_defect(&ops[0], &ops[1]),
            }
            .expect("operands share a context");
            let zero = defect.is_zero();
            rows += 1;
            nonzero += usize::from(!zero);
            let mut params = json!({"n": ctx.n(), "N": ctx.big_n(), "p": ds[0], "q": ds[1]});
            if arity == 3 {
                params["r"] = json!(ds[2]);
            }
            params["operands"] = which;
            let label = match question {
                Question::Assoc => assoc_label(ds[0], ds[1], ds[2]),
                Question::Comm => cup_label(ds[0], ds[1]),
            };
            records.push(Record::new(
                suite,
                &format!("{}-defect", question.as_str()),
                label,
                params,
                status(zero),
                json!({"zero": zero, "terms": defect.entries().count(), "defect": cochain_to_json(&defect)}),
            ));
        }
        let mut row =
            json!({"suite": suite, "N": ctx.big_n(), "p": ds[0], "q": ds[1], "rows": rows, "nonzero": nonzero});
        if arity == 3 {
            row["r"] = json!(ds[2]);
        }
        summary.push(row);
    }
}

fn cartesian(lists: &[Vec<Cochain>]) -> Vec<Vec<Cochain>> {
    lists.iter().fold(vec![vec![]], |acc, list| {
        acc.into_iter()
            .flat_map(|prefix| {
                list.iter().map(move |x| {
                    let mut next = prefix.clone();
                    next.push(x.clone());
                    next
                })
            })
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n: usize, big_n: usize, max_degree: usize) -> SuiteConfig {
        SuiteConfig { n, big_n, max_degree, seed: 1, samples: 1 }
    }

    fn all_pass(records: &[Record]) -> bool {
        records.iter().all(|r| r.status == Status::Pass)
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH.into_iter().chain([Suite::All]) {
            assert_eq!(s.as_str().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn compositions_are_counted() {
        let mut count = 0;
        for_compositions(3, 5, &mut |parts| {
            assert_eq!(parts.iter().sum::<usize>(), 3);
            count += 1;
        });
        assert_eq!(count, binomial(7, 4));
    }

    #[test]
    fn every_suite_passes_on_small_contexts() {
        for (n, big_n) in [(3, 2), (3, 3)] {
            let records = run_suite(&cfg(n, big_n, 3), Suite::All).unwrap();
            let failed: Vec<_> = records.iter().filter(|r| r.status != Status::Pass).collect();
            assert!(failed.is_empty(), "{failed:?}");
        }
    }

    #[test]
    fn cartan_requires_quadratic() {
        assert!(matches!(run_suite(&cfg(3, 3, 2), Suite::Cartan), Err(Error::RequiresQuadratic(3))));
    }

    #[test]
    fn dims_table() {
        let (table, records) = dims(&cfg(3, 3, 4)).unwrap();
        assert!(all_pass(&records));
        assert_eq!(table["d"], 2);
        assert_eq!(table["hilbert"], json!([1, 3, 9, 26, 75]));
        assert_eq!(table["w"][3]["dim_W_nu_p"], 0);
    }

    #[test]
    fn experiment_controls_vanish_and_rows_are_reported() {
        let (records, summary) = experiment(&cfg(3, 3, 2), Question::Assoc).unwrap();
        assert!(records.iter().filter(|r| r.suite == "control").all(|r| r.status == Status::Pass));
        assert!(records.iter().filter(|r| r.suite == "experiment").all(|r| r.status == Status::Reported));
        assert!(!summary.as_array().unwrap().is_empty());
        let again = experiment(&cfg(3, 3, 2), Question::Assoc).unwrap();
        assert_eq!(records, again.0);
    }
}
