use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use polymut::cluster::{explore, ExploreOptions, Seed, SeedGraphNode};
use polymut::exact::rat;
use polymut::lie::{
    cartan, exchange_from_word, fflv_a, fflv_c, gt_marked_poset, gt_polytope_a, gt_polytope_c,
    nz_sp4, sl4_no_body, standard_word, LieType, Weight,
};
use polymut::mutation::{duality_check, MutationDatum};
use polymut::poset::{counterexample_witness, MarkedPoset};
use polymut::polytope::{affine_unimodular_equivalent, EquivalenceOptions, EquivalenceOutcome};
use polymut::{Error, IntVector, RatVector, RationalPolytope};

const EXIT_USAGE: u8 = 2;
const EXIT_FAILED: u8 = 3;
const EXIT_INCONCLUSIVE: u8 = 4;

#[derive(Parser)]
#[command(name = "polymut", version, about = "Exact polytope mutations and their invariants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a generated polytope as JSON.
    Gen {
        kind: GenKind,
        #[command(flatten)]
        params: GenParams,
    },
    /// Apply a mutation to a polytope.
    Mutate(MutateArgs),
    /// Polar dual, or the dual at a lattice point.
    Dual {
        #[command(flatten)]
        input: PolytopeInput,
        /// Lattice point to dualize at, e.g. "0,0,1".
        #[arg(long)]
        at: Option<String>,
    },
    /// Run one invariant check and print a report.
    Check(CheckArgs),
    /// Walk the SL4 exchange graph and check every node.
    Explore(ExploreArgs),
    /// Lattice-point counts of k·P for k = 1..k_max.
    Ehrhart {
        #[command(flatten)]
        input: PolytopeInput,
        #[arg(long, default_value_t = 3)]
        k_max: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    GtA,
    GtC,
    FflvA,
    FflvC,
    Sl4Nobody,
    NzSp4,
    MarkedOrder,
    MarkedChain,
    MarkedChainOrder,
}

#[derive(Args, Clone, Default)]
struct GenParams {
    #[arg(long)]
    n: Option<usize>,
    /// Fundamental-weight coordinates, e.g. "2,2,2". Defaults to 2ρ.
    #[arg(long)]
    lambda: Option<String>,
    /// Marked poset JSON file.
    #[arg(long)]
    poset: Option<String>,
    /// Comma-separated labels of the chain part.
    #[arg(long)]
    pi_prime: Option<String>,
}

#[derive(Args, Clone)]
struct PolytopeInput {
    /// Polytope JSON file, "-" for stdin.
    #[arg(long)]
    polytope: Option<String>,
    /// Generate the input instead of reading it.
    #[arg(long = "gen")]
    generate: Option<GenKind>,
    #[command(flatten)]
    params: GenParams,
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    #[value(name = "M")]
    M,
    #[value(name = "N")]
    N,
    Tropical,
}

#[derive(Args)]
struct MutateArgs {
    #[arg(long)]
    side: Side,
    /// Mutation datum JSON `{w, F, f}`.
    #[arg(long)]
    datum: Option<String>,
    /// Seed JSON `{J, J_uf, epsilon}`.
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    k: Option<usize>,
    /// Where to write the mutated seed.
    #[arg(long)]
    seed_out: Option<String>,
    #[command(flatten)]
    input: PolytopeInput,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    Duality,
    ReflexiveDual,
    Interior,
    Equivalent,
    EhrhartDualInvariance,
    TransferFactorization,
    Counterexample,
}

#[derive(Args)]
struct CheckArgs {
    kind: CheckKind,
    #[command(flatten)]
    input: PolytopeInput,
    /// Second polytope for `equivalent`.
    #[arg(long)]
    other: Option<String>,
    #[arg(long)]
    datum: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 3)]
    k_max: u32,
    /// Lie type for `transfer-factorization`.
    #[arg(long = "type")]
    lie_type: Option<String>,
    #[arg(long, default_value_t = EquivalenceOptions::default().frame_budget)]
    frame_budget: u64,
}

#[derive(Args)]
struct ExploreArgs {
    #[arg(long, default_value_t = 3)]
    depth: usize,
    #[arg(long, default_value_t = 6)]
    max_depth: usize,
    #[arg(long, default_value = "2,2,2")]
    lambda: String,
    #[arg(long, default_value_t = 3)]
    k_max: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Status {
    Pass,
    Inconclusive,
    Fail,
}

impl Status {
    fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Inconclusive => "inconclusive",
            Status::Fail => "fail",
        }
    }

    fn of(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

struct Report {
    checks: Vec<(String, Status, Value)>,
    data: Option<Value>,
}

impl Report {
    fn new() -> Self {
        Report { checks: Vec::new(), data: None }
    }

    fn check(&mut self, name: &str, status: Status, witness: Value) {
        self.checks.push((name.to_string(), status, witness));
    }

    fn status(&self) -> Status {
        self.checks.iter().map(|c| c.1).max().unwrap_or(Status::Pass)
    }

    fn to_json(&self) -> Value {
        let mut v = json!({
            "command": std::env::args().skip(1).collect::<Vec<_>>(),
            "status": self.status().name(),
            "checks": self.checks.iter().map(|(n, s, w)| json!({
                "name": n,
                "status": s.name(),
                "witness": w,
            })).collect::<Vec<_>>(),
        });
        if let Some(d) = &self.data {
            v["data"] = d.clone();
        }
        v
    }
}

/// A failure to run at all, as opposed to a check that ran and failed.
enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::Dimension(_) | Error::Invalid(_) | Error::Frozen(_) => {
                Failure::Usage(e.to_string())
            }
            e => Failure::Lib(e),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(Failure::Usage(msg.into()))
}

fn read_source(path: &str) -> CliResult<String> {
    if path == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))
    }
}

fn parse_ints(s: &str) -> CliResult<Vec<BigInt>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Failure::Usage(format!("not an integer: {t:?}")))
        })
        .collect()
}

fn lambda_or_two_rho(params: &GenParams, rank: usize) -> CliResult<Weight> {
    let w: Weight = match &params.lambda {
        Some(s) => s.parse()?,
        None => Weight(vec![2; rank]),
    };
    if w.rank() != rank {
        return usage(format!("λ needs {rank} coordinates"));
    }
    if !w.is_dominant() {
        return usage("λ must be dominant");
    }
    Ok(w)
}

fn need_n(params: &GenParams) -> CliResult<usize> {
    match params.n {
        Some(n) if n >= 1 => Ok(n),
        _ => usage("--n ≥ 1 is required"),
    }
}

fn load_poset(params: &GenParams) -> CliResult<MarkedPoset> {
    match &params.poset {
        Some(p) => Ok(MarkedPoset::from_json(&read_source(p)?)?),
        None => usage("--poset FILE is required"),
    }
}

fn generate(kind: GenKind, params: &GenParams) -> CliResult<RationalPolytope> {
    Ok(match kind {
        GenKind::GtA => {
            let n = need_n(params)?;
            gt_polytope_a(n, &lambda_or_two_rho(params, n)?)?
        }
        GenKind::GtC => {
            let n = need_n(params)?;
            gt_polytope_c(n, &lambda_or_two_rho(params, n)?)?
        }
        GenKind::FflvA => {
            let n = need_n(params)?;
            fflv_a(n, &lambda_or_two_rho(params, n)?)?
        }
        GenKind::FflvC => {
            let n = need_n(params)?;
            fflv_c(n, &lambda_or_two_rho(params, n)?)?
        }
        GenKind::Sl4Nobody => sl4_no_body(&lambda_or_two_rho(params, 3)?)?,
        GenKind::NzSp4 => nz_sp4(&lambda_or_two_rho(params, 2)?)?,
        GenKind::MarkedOrder => load_poset(params)?.order_polytope(),
        GenKind::MarkedChain => load_poset(params)?.chain_polytope(),
        GenKind::MarkedChainOrder => {
            let p = load_poset(params)?;
            let labels: Vec<&str> = match &params.pi_prime {
                Some(s) if !s.is_empty() => s.split(',').map(str::trim).collect(),
                _ => Vec::new(),
            };
            p.chain_order_polytope(&labels)?
        }
    })
}

/// Coordinate labels for generators that come from a marked poset.
fn coordinate_labels(input: &PolytopeInput) -> Option<Vec<String>> {
    let (kind, n) = match input.generate? {
        GenKind::GtA => (LieType::A, input.params.n?),
        GenKind::GtC => (LieType::C, input.params.n?),
        _ => return None,
    };
    let lambda = lambda_or_two_rho(&input.params, n).ok()?;
    let p = gt_marked_poset(kind, n, &lambda).ok()?;
    Some(p.unmarked().into_iter().map(String::from).collect())
}

fn load_polytope(input: &PolytopeInput) -> CliResult<RationalPolytope> {
    match (&input.polytope, input.generate) {
        (Some(_), Some(_)) => usage("give either --polytope or --gen"),
        (None, Some(kind)) => generate(kind, &input.params),
        (Some(path), None) => Ok(RationalPolytope::from_json(&read_source(path)?)?),
        (None, None) => Ok(RationalPolytope::from_json(&read_source("-")?)?),
    }
}

fn load_datum(path: &Option<String>) -> CliResult<MutationDatum> {
    match path {
        Some(p) => Ok(MutationDatum::from_json(&read_source(p)?)?),
        None => usage("--datum FILE is required"),
    }
}

fn load_seed(path: &Option<String>) -> CliResult<Seed> {
    match path {
        Some(p) => Ok(Seed::from_json(&read_source(p)?)?),
        None => usage("--seed FILE is required"),
    }
}

fn need_k(k: Option<usize>) -> CliResult<usize> {
    k.map_or_else(|| usage("--k is required"), Ok)
}

fn error_witness(e: &Error) -> Value {
    let kind = match e {
        Error::NotWellDefined(_) => "NotWellDefined",
        Error::NonConvexImage { .. } => "NonConvexImage",
        Error::NotInterior(_) => "NotInterior",
        Error::NotLattice(_) => "NotLattice",
        Error::EmptyPolytope => "EmptyPolytope",
        Error::Unbounded => "Unbounded",
        Error::NotPure => "NotPure",
        Error::AssumptionViolated(_) => "AssumptionViolated",
        _ => "Error",
    };
    json!({ "error": kind, "message": e.to_string() })
}

fn emit(v: &Value) {
    let mut out = io::stdout().lock();
    let _ = serde_json::to_writer_pretty(&mut out, v);
    let _ = writeln!(out);
}

fn cmd_mutate(a: &MutateArgs) -> CliResult<Value> {
    let p = load_polytope(&a.input)?;
    let out = match a.side {
        Side::M => load_datum(&a.datum)?.apply_polytope(&p)?,
        Side::N => load_datum(&a.datum)?.mutate_n(&p)?,
        Side::Tropical => {
            let seed = load_seed(&a.seed)?;
            let node = SeedGraphNode::root(seed, p)?.tropical_mutate(need_k(a.k)?)?;
            if let Some(path) = &a.seed_out {
                let s = serde_json::to_string_pretty(&node.seed.to_json_value())
                    .expect("seed JSON");
                fs::write(path, s + "\n").map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
            }
            node.payload
        }
    };
    Ok(out.to_json_value())
}

/// Polar when the origin is interior, otherwise the dual at the unique
/// interior lattice point.
fn cmd_dual(input: &PolytopeInput, at: &Option<String>) -> CliResult<Value> {
    let p = load_polytope(input)?;
    let d = match at {
        Some(s) => p.dual_at(&IntVector(parse_ints(s)?))?,
        None if p.contains_in_interior(&RatVector::zeros(p.dim())) => p.polar()?,
        None => match p.interior_lattice_points().as_slice() {
            [a] => p.dual_at(a)?,
            pts => {
                return Err(Failure::Lib(Error::NotInterior(format!(
                    "no --at given and {} interior lattice points",
                    pts.len()
                ))))
            }
        },
    };
    Ok(d.to_json_value())
}

fn cmd_ehrhart(input: &PolytopeInput, k_max: u32) -> CliResult<Value> {
    let p = load_polytope(input)?;
    Ok(json!({ "counts": p.ehrhart_counts(k_max) }))
}

fn check_interior(r: &mut Report, a: &CheckArgs) -> CliResult<()> {
    let p = load_polytope(&a.input)?;
    let pts = p.interior_lattice_points();
    let mut w = json!({ "interior_points": pts });
    if let (Some(labels), [x]) = (coordinate_labels(&a.input), pts.as_slice()) {
        let values = json!(x).as_array().cloned().unwrap_or_default();
        let named: serde_json::Map<String, Value> = labels.into_iter().zip(values).collect();
        w["labeled"] = Value::Object(named);
    }
    r.check("unique-interior-lattice-point", Status::of(pts.len() == 1), w);
    Ok(())
}

fn check_reflexive_dual(r: &mut Report, a: &CheckArgs) -> CliResult<()> {
    let p = load_polytope(&a.input)?;
    let pts = p.interior_lattice_points();
    let [x] = pts.as_slice() else {
        r.check(
            "unique-interior-lattice-point",
            Status::Fail,
            json!({ "interior_points": pts }),
        );
        return Ok(());
    };
    let d = p.dual_at(x)?;
    let bad: Vec<&RatVector> = d.vertices().iter().filter(|v| !v.is_integral()).collect();
    r.check(
        "lattice-dual",
        Status::of(bad.is_empty()),
        json!({ "point": x, "dual": d.to_json_value(), "fractional_vertices": bad }),
    );
    Ok(())
}

fn check_duality(r: &mut Report, a: &CheckArgs) -> CliResult<()> {
    let p = load_polytope(&a.input)?;
    let d = load_datum(&a.datum)?;
    match duality_check(&p, &d) {
        Ok(ok) => {
            let lhs = d.phi_polytope(&p.polar()?)?;
            let rhs = d.mutate_n(&p)?.polar()?;
            r.check(
                "phi-of-dual-is-dual-of-mutation",
                Status::of(ok),
                json!({ "phi_dual": lhs.to_json_value(), "dual_mutation": rhs.to_json_value() }),
            );
        }
        Err(e) => r.check("phi-of-dual-is-dual-of-mutation", Status::Fail, error_witness(&e)),
    }
    Ok(())
}

fn check_equivalent(r: &mut Report, a: &CheckArgs) -> CliResult<()> {
    let p = load_polytope(&a.input)?;
    let q = match &a.other {
        Some(path) => RationalPolytope::from_json(&read_source(path)?)?,
        None => return usage("--other FILE is required"),
    };
    let opts = EquivalenceOptions { frame_budget: a.frame_budget };
    let (status, w) = match affine_unimodular_equivalent(&p, &q, &opts)? {
        EquivalenceOutcome::Equivalent { m, t } => {
            let ok = p.apply_affine(&m, &t)? == q;
            (Status::of(ok), json!({ "m": m, "t": t, "verified": ok }))
        }
        EquivalenceOutcome::NotEquivalent { reason } => (Status::Fail, json!({ "reason": reason })),
        EquivalenceOutcome::Inconclusive { frames_tried, budget } => (
            Status::Inconclusive,
            json!({ "frames_tried": frames_tried, "frame_budget": budget }),
        ),
    };
    r.check("affine-unimodular-equivalence", status, w);
    Ok(())
}

/// With `--datum`, compares the counts of `P*` and `mut_w(P, F)*`. With
/// `--seed`/`--k`, `P` is an M-side payload and its counts are compared
/// with those of its tropical mutation.
fn check_ehrhart_invariance(r: &mut Report, a: &CheckArgs) -> CliResult<()> {
    let p = load_polytope(&a.input)?;
    let (before, after) = if a.datum.is_some() {
        let d = load_datum(&a.datum)?;
        let q = match d.mutate_n(&p) {
            Ok(q) => q,
            Err(e) => {
                r.check("ehrhart-invariance", Status::Fail, error_witness(&e));
                return Ok(());
            }
        };
        (p.polar()?, q.polar()?)
    } else {
        let node = SeedGraphNode::root(load_seed(&a.seed)?, p.clone())?;
        (p, node.tropical_mutate(need_k(a.k)?)?.payload)
    };
    let (c0, c1) = (before.ehrhart_counts(a.k_max), after.ehrhart_counts(a.k_max));
    r.check(
        "ehrhart-invariance",
        Status::of(c0 == c1),
        json!({ "before": c0, "after": c1, "image": after.to_json_value() }),
    );
    Ok(())
}

fn check_transfer(r: &mut Report, a: &CheckArgs) -> CliResult<()> {
    let mp = if a.input.params.poset.is_some() {
        load_poset(&a.input.params)?
    } else {
        let kind: LieType = match &a.lie_type {
            Some(t) => t.parse()?,
            None => return usage("--type or --poset is required"),
        };
        if !matches!(kind, LieType::A | LieType::C) {
            return usage("transfer factorization is defined for types A and C");
        }
        let n = need_n(&a.input.params)?;
        gt_marked_poset(kind, n, &lambda_or_two_rho(&a.input.params, n)?)?
    };
    let u = match mp.admissible_u() {
        Ok(u) => u,
        Err(e) => {
            r.check("admissible-u", Status::Fail, error_witness(&e));
            return Ok(());
        }
    };
    let tf = mp.transfer_factorization(&u)?;
    let mismatch = tf.first_mismatch().map(|s| {
        json!({
            "element": s.element,
            "image": s.image.to_json_value(),
            "expected": s.expected.to_json_value(),
        })
    });
    r.check("steps-match", Status::of(tf.all_steps_match()), json!({ "first_mismatch": mismatch }));
    r.check(
        "steps-lattice",
        Status::of(tf.all_steps_lattice()),
        json!({ "order": tf.order }),
    );
    r.check(
        "reaches-chain-polytope",
        Status::of(tf.reaches_chain_polytope()),
        json!({ "final": tf.final_image().to_json_value(), "end": tf.end.to_json_value() }),
    );
    let (n0, n1) = (tf.start.lattice_point_count(), tf.end.lattice_point_count());
    r.check(
        "lattice-point-counts",
        Status::of(n0 == n1),
        json!({ "order_side": n0, "chain_side": n1 }),
    );
    r.data = Some(tf.to_json_value());
    Ok(())
}

/// Every point of the half-integer grid in the box `[λ₁, λ₄]³` that lies in
/// the order polytope.
fn grid_points(lambda: [i64; 4]) -> Vec<RatVector> {
    let (lo, hi) = (2 * lambda[0], 2 * lambda[3]);
    let order = polymut::poset::counterexample_poset(lambda)
        .map(|p| p.order_polytope())
        .ok();
    let mut out = Vec::new();
    for x in lo..=hi {
        for y in lo..=hi {
            for z in lo..=hi {
                let pt = RatVector(vec![rat(x, 2), rat(y, 2), rat(z, 2)]);
                if order.as_ref().is_some_and(|o| o.contains(&pt)) {
                    out.push(pt);
                }
            }
        }
    }
    out
}

fn check_counterexample(r: &mut Report, a: &CheckArgs) -> CliResult<()> {
    let raw = a.input.params.lambda.as_deref().unwrap_or("0,1,2,3");
    let vals: Vec<i64> = raw
        .split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Failure::Usage(format!("bad λ {raw:?}")))?;
    let Ok(lambda) = <[i64; 4]>::try_from(vals) else {
        return usage("λ needs four entries");
    };
    let rep = counterexample_witness(lambda, &grid_points(lambda))?;
    r.check(
        "branch-formulas",
        Status::of(rep.branch_mismatches.is_empty()),
        json!({ "points_checked": rep.points_checked, "mismatches": rep.branch_mismatches }),
    );
    r.check(
        "no-common-fixed-origin",
        Status::of(!rep.common_fixed_origin),
        json!({ "system_rank": rep.system_rank, "augmented_rank": rep.augmented_rank }),
    );
    r.check(
        "not-admissible",
        Status::of(!rep.admissible),
        json!({ "admissible": rep.admissible }),
    );
    Ok(())
}

fn cmd_check(a: &CheckArgs) -> CliResult<Report> {
    let mut r = Report::new();
    match a.kind {
        CheckKind::Duality => check_duality(&mut r, a)?,
        CheckKind::ReflexiveDual => check_reflexive_dual(&mut r, a)?,
        CheckKind::Interior => check_interior(&mut r, a)?,
        CheckKind::Equivalent => check_equivalent(&mut r, a)?,
        CheckKind::EhrhartDualInvariance => check_ehrhart_invariance(&mut r, a)?,
        CheckKind::TransferFactorization => check_transfer(&mut r, a)?,
        CheckKind::Counterexample => check_counterexample(&mut r, a)?,
    }
    Ok(r)
}

fn cmd_explore(a: &ExploreArgs) -> CliResult<Report> {
    if a.depth > a.max_depth {
        return usage(format!("--depth {} exceeds --max-depth {}", a.depth, a.max_depth));
    }
    let lambda: Weight = a.lambda.parse()?;
    if lambda.rank() != 3 || !lambda.is_dominant() {
        return usage("λ must be a dominant SL4 weight");
    }
    let c = cartan(LieType::A, 3)?;
    let seed = exchange_from_word(&c, &standard_word(LieType::A, 3)?)?;
    let root = SeedGraphNode::root(seed, sl4_no_body(&lambda)?)?;
    let rep = explore(&root, &ExploreOptions { depth: a.depth, k_max: a.k_max })?;

    let mut r = Report::new();
    let expected = (lambda == c.two_rho()).then(|| IntVector::from_i64(&[0, 0, 0, 1, 1, 1]));
    let off_interior: Vec<Value> = rep
        .nodes
        .iter()
        .filter(|n| {
            n.interior_points.len() != 1
                || expected.as_ref().is_some_and(|e| &n.interior_points[0] != e)
        })
        .map(|n| json!({ "path": n.node.path, "interior_points": n.interior_points }))
        .collect();
    r.check(
        "unique-interior-lattice-point",
        Status::of(off_interior.is_empty()),
        json!({ "expected": expected, "offending": off_interior }),
    );
    let non_lattice: Vec<Value> = rep
        .nodes
        .iter()
        .filter(|n| n.dual_is_lattice != Some(true))
        .map(|n| json!({ "path": n.node.path, "dual": n.dual.as_ref().map(|d| d.to_json_value()) }))
        .collect();
    r.check("lattice-duals", Status::of(non_lattice.is_empty()), json!({ "offending": non_lattice }));
    let per_node = |f: &dyn Fn(&polymut::cluster::ExploredNode) -> Value| -> Vec<Value> {
        rep.nodes.iter().map(|n| json!({ "path": n.node.path, "counts": f(n) })).collect()
    };
    r.check(
        "constant-dual-ehrhart",
        Status::of(rep.constant_dual_ehrhart().is_some()),
        match rep.constant_dual_ehrhart() {
            Some(c) => json!({ "counts": c }),
            None => json!({ "per_node": per_node(&|n| json!(n.dual_ehrhart)) }),
        },
    );
    r.check(
        "constant-payload-ehrhart",
        Status::of(rep.constant_payload_ehrhart().is_some()),
        match rep.constant_payload_ehrhart() {
            Some(c) => json!({ "counts": c }),
            None => json!({ "per_node": per_node(&|n| json!(n.payload_ehrhart)) }),
        },
    );
    r.data = Some(rep.to_json_value());
    Ok(r)
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("POLYMUT_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("POLYMUT_THREADS must be a positive integer, got {raw:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    let report = match &cli.command {
        Command::Gen { kind, params } => {
            emit(&generate(*kind, params)?.to_json_value());
            return Ok(ExitCode::SUCCESS);
        }
        Command::Mutate(a) => match cmd_mutate(a) {
            Ok(v) => {
                emit(&v);
                return Ok(ExitCode::SUCCESS);
            }
            Err(Failure::Lib(e)) => {
                emit(&error_witness(&e));
                return Ok(ExitCode::from(EXIT_FAILED));
            }
            Err(e) => return Err(e),
        },
        Command::Dual { input, at } => {
            emit(&cmd_dual(input, at)?);
            return Ok(ExitCode::SUCCESS);
        }
        Command::Ehrhart { input, k_max } => {
            emit(&cmd_ehrhart(input, *k_max)?);
            return Ok(ExitCode::SUCCESS);
        }
        Command::Check(a) => cmd_check(a)?,
        Command::Explore(a) => cmd_explore(a)?,
    };
    emit(&report.to_json());
    Ok(match report.status() {
        Status::Pass => ExitCode::SUCCESS,
        Status::Fail => ExitCode::from(EXIT_FAILED),
        Status::Inconclusive => ExitCode::from(EXIT_INCONCLUSIVE),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("polymut: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    match run(cli) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("polymut: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Lib(e)) => {
            emit(&error_witness(&e));
            ExitCode::from(EXIT_FAILED)
        }
    }
}
