//! Command dispatch for the `deltaring` binary.

use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use deltaring::dideal::{
    self, delta_close, delta_member, psharp, radical_delta, DeltaMembership, PsharpResult, DEFAULT_DEGREE_BOUND,
    DEFAULT_MAXITER, DEFAULT_ORDER_BOUND,
};
use deltaring::diff::{constants_truncated, localize, DiffRing};
use deltaring::exec::Strategy;
use deltaring::fixtures;
use deltaring::groebner::Limits;
use deltaring::ideal::{sort_descending, Ideal};
use deltaring::poly::{MonomialOrder, Poly, PolyRing};
use deltaring::report::Report;
use deltaring::ringspec::{parse_ring, RingSpec};
use deltaring::scalar::{Field, Scalar};
use deltaring::suites::{run_suite, SuiteConfig, SUITE_NAMES};
use deltaring::svdp::{ann_operator, op_apply, ore_mul, tensor_length, unit_operator, LinDiffOp, TensorRing};
use deltaring::text::{parse_poly, parse_poly_list, print_ideal};
use deltaring::traj::{self, AffineDScheme, SimplicityVerdict};
use deltaring::Error;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "deltaring", version, about = "Differential ideals, trajectories and tensor-ring checks")]
struct Cli {
    /// Print structured JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Cap on S-pairs per Gröbner basis computation.
    #[arg(long, global = true)]
    max_pairs: Option<usize>,

    /// Cap on the degree of intermediate polynomials.
    #[arg(long, global = true)]
    max_degree: Option<u32>,

    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Debug, Clone)]
struct RingArg {
    /// Ring: a built-in name, a JSON file, or inline JSON.
    #[arg(long)]
    ring: String,
}

#[derive(Args, Debug, Clone)]
struct IdealArg {
    /// Comma-separated generators.
    #[arg(long)]
    ideal: String,
}

#[derive(Args, Debug, Clone)]
struct TensorArg {
    /// Variables of the base algebra; `t` is reserved.
    #[arg(long, default_value = "u,v", value_delimiter = ',')]
    base: Vec<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum OrderArg {
    Lex,
    Degrevlex,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduced Gröbner basis of the ideal plus the quotient.
    Gb {
        #[command(flatten)]
        ring: RingArg,
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long, value_enum, default_value = "degrevlex")]
        order: OrderArg,
    },
    /// Normal form modulo the ideal.
    Nf {
        #[command(flatten)]
        ring: RingArg,
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long)]
        poly: String,
    },
    /// Ideal membership
    Member {
        #[command(flatten)]
        ring: RingArg,
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long)]
        poly: String,
    },
    /// Intersection of two ideals
    Intersect {
        #[command(flatten)]
        ring: RingArg,
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long)]
        with: String,
    },
    /// `(I : f)`, or `(I : J)` with `--by-ideal`.
    Colon {
        #[command(flatten)]
        ring: RingArg,
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long, conflicts_with = "by_ideal", required_unless_present = "by_ideal")]
        by: Option<String>,
        #[arg(long)]
        by_ideal: Option<String>,
    },
    /// `(I : f^∞)`.
    Sat {
        #[command(flatten)]
        ring: RingArg,
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long)]
        by: String,
    },
    /// Eliminates the listed variables
    Eliminate {
        #[command(flatten)]
        ring: RingArg,
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long, value_delimiter = ',')]
        vars: Vec<String>,
    },
    /// Differential closure up to order `--bound`.
    Dclose {
        #[command(flatten)]
        ring: RingArg,
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long, default_value_t = DEFAULT_ORDER_BOUND)]
        bound: usize,
    },
    /// Whether the ideal is stable under every derivation
    Disideal {
        #[command(flatten)]
        ring: RingArg,
        #[command(flatten)]
        ideal: IdealArg,
    },
    /// Membership in the differential closure, searched up to `--bound`
    Dmember {
        #[command(flatten)]
        ring: RingArg,
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long)]
        poly: String,
        #[arg(long, default_value_t = DEFAULT_ORDER_BOUND)]
        bound: usize,
    },
    /// Radical differential ideal, alternating radical and closure
    RadicalDelta {
        #[command(flatten)]
        ring: RingArg,
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long, default_value_t = DEFAULT_ORDER_BOUND)]
        bound: usize,
        #[arg(long, default_value_t = 8)]
        rounds: usize,
    },
    /// Largest differential ideal inside a prime, at a degree bound.
    Psharp {
        #[command(flatten)]
        ring: RingArg,
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long, default_value_t = DEFAULT_DEGREE_BOUND)]
        degree: u32,
        #[arg(long, default_value_t = DEFAULT_MAXITER)]
        maxiter: usize,
    },
    /// Trajectory of a prime (characteristic zero).
    Traj {
        #[command(flatten)]
        ring: RingArg,
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long, default_value_t = DEFAULT_DEGREE_BOUND)]
        degree: u32,
    },
    /// Whether an ideal, or every prime listed in a fixture file, is a leaf.
    Leaf {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long, required_unless_present = "fixtures")]
        ideal: Option<String>,
        /// JSON list of `{name, generators, asserted: "prime"}`.
        #[arg(long, conflicts_with = "ideal")]
        fixtures: Option<String>,
        /// Degree bound for the trajectories of fixtures.
        #[arg(long, default_value_t = 6)]
        degree: u32,
    },
    /// Meets a leaf of the tensor ring with the fiber over `t = c`.
    Fiber {
        #[command(flatten)]
        tensor: TensorArg,
        /// Ideal of the tensor ring.
        #[arg(long, required_unless_present = "elem")]
        ideal: Option<String>,
        /// Element to evaluate instead of an ideal.
        #[arg(long, conflicts_with = "ideal")]
        elem: Option<String>,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        at: String,
    },
    /// Extends an ideal of the base to the tensor ring
    SvdpExtend {
        #[command(flatten)]
        tensor: TensorArg,
        /// Ideal of the base algebra.
        #[command(flatten)]
        ideal: IdealArg,
    },
    /// Contracts an ideal of the tensor ring to the base
    SvdpContract {
        #[command(flatten)]
        tensor: TensorArg,
        #[command(flatten)]
        ideal: IdealArg,
    },
    /// Writes an element of a differential ideal as a sum with coefficients in the contraction.
    SvdpReduce {
        #[command(flatten)]
        tensor: TensorArg,
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long)]
        elem: String,
    },
    /// Tensor length of an element
    SvdpLength {
        #[command(flatten)]
        tensor: TensorArg,
        #[arg(long)]
        elem: String,
    },
    /// Product of operators in `Q[t][d]`, written in normal order.
    Ore {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        /// Also apply the product to this element of `Q[t]`.
        #[arg(long)]
        apply: Option<String>,
    },
    /// Basis of operators killing `--lambda` within the bounds.
    Ann {
        #[arg(long)]
        lambda: String,
        #[arg(long, default_value_t = 2)]
        maxord: u32,
        #[arg(long, default_value_t = 1)]
        coeffdeg: u32,
    },
    /// Operator sending `--lambda` to 1
    UnitOp {
        #[arg(long)]
        lambda: String,
    },
    /// Constants of the ring up to `--degree`
    Constants {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long, default_value_t = 6)]
        degree: u32,
    },
    /// Ring file for the localization at `--poly`
    Localize {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        poly: String,
    },
    /// Searches the samples for a proper differential ideal
    SimpleScan {
        #[command(flatten)]
        ring: RingArg,
        /// Comma-separated sample elements.
        #[arg(long)]
        samples: String,
        #[arg(long, default_value_t = 6)]
        bound: usize,
    },
    /// Both round trips between a fiber point and a leaf.
    MainCheck {
        #[command(flatten)]
        tensor: TensorArg,
        /// Fiber point, an ideal of the base algebra.
        #[arg(long)]
        q: String,
        /// Leaf in the tensor ring; defaults to the extension of `q`.
        #[arg(long)]
        leaf: Option<String>,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        at: String,
        #[arg(long, default_value_t = 6)]
        degree: u32,
    },
    /// Runs a named verification suite.
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(SUITE_NAMES))]
        suite: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        cases: Option<usize>,
        #[arg(long)]
        sequential: bool,
    },
}

struct Output {
    text: String,
    json: Value,
    code: i32,
}

fn out(text: impl Into<String>, json: Value) -> Output {
    Output { text: text.into(), json, code: EXIT_PASS }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

/// Runs one invocation; returns the exit code and what to print.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            return (code, e.render().to_string());
        }
    };
    let json = cli.json;
    match dispatch(&cli) {
        Ok(o) => {
            let s = if json { serde_json::to_string_pretty(&o.json).expect("json") } else { o.text };
            (o.code, s)
        }
        Err(e) => {
            let code = match e {
                Error::Resource(_) => EXIT_RESOURCE,
                _ => EXIT_USAGE,
            };
            let s = if json { json!({ "error": e.to_string() }).to_string() } else { format!("error: {e}") };
            (code, s)
        }
    }
}

fn limits(cli: &Cli) -> Limits {
    let mut l = Limits::default();
    if let Some(p) = cli.max_pairs {
        l.max_pairs = p;
    }
    if let Some(d) = cli.max_degree {
        l.max_degree = d;
    }
    l
}

/// Built-in name, path to a JSON file, or inline JSON. A missing file whose
/// stem names a built-in ring falls back to the built-in.
fn load_ring(src: &str) -> deltaring::Result<DiffRing> {
    let src = src.trim();
    if src.starts_with('{') {
        return parse_ring(src);
    }
    if let Some(r) = fixtures::named_ring(src) {
        return Ok(r);
    }
    let path = Path::new(src);
    match std::fs::read_to_string(path) {
        Ok(text) => parse_ring(&text),
        Err(e) => {
            let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default();
            fixtures::named_ring(stem).ok_or_else(|| {
                usage(format!("cannot read ring `{src}` ({e}); built-in rings: {}", fixtures::RING_NAMES.join(", ")))
            })
        }
    }
}

fn ideal_in(r: &DiffRing, src: &str, lim: Limits) -> deltaring::Result<Ideal> {
    Ok(r.parse_ideal(src)?.with_limits(lim))
}

fn tensor(t: &TensorArg) -> deltaring::Result<TensorRing> {
    let vars: Vec<&str> = t.base.iter().map(|s| s.trim()).collect();
    TensorRing::over(&vars)
}

fn k_ring() -> std::sync::Arc<PolyRing> {
    PolyRing::new(Field::Q, ["t"]).expect("one variable")
}

fn scalar(src: &str) -> deltaring::Result<Scalar> {
    parse_poly(src, &k_ring())?.constant_value().ok_or_else(|| usage(format!("`{src}` is not a constant")))
}

fn ideal_json(r: &DiffRing, i: &Ideal) -> deltaring::Result<Value> {
    let gens: Vec<String> = r.display_gens(i)?.iter().map(|g| g.to_text()).collect();
    Ok(json!(gens))
}

fn plain_ideal(i: &Ideal) -> deltaring::Result<(String, Value)> {
    let basis = sort_descending(i.basis()?.to_vec());
    let gens: Vec<String> = basis.iter().map(|g| g.to_text()).collect();
    Ok((print_ideal(&basis), json!(gens)))
}

fn psharp_output(r: &DiffRing, res: &PsharpResult) -> deltaring::Result<Output> {
    let fin = r.display_ideal(&res.final_ideal)?;
    let trace = res.trace.iter().map(|j| r.display_ideal(j)).collect::<deltaring::Result<Vec<_>>>()?;
    let text = format!("{fin}, status={}", res.status);
    let js = json!({
        "final": ideal_json(r, &res.final_ideal)?,
        "status": res.status,
        "steps": res.steps(),
        "trace": trace,
        "stable": res.stable,
        "contained": res.contained,
        "bound": res.bound,
    });
    Ok(out(text, js))
}

fn report_output(rep: &Report) -> Output {
    let code = if rep.pass { EXIT_PASS } else { EXIT_CHECK_FAILED };
    let js = serde_json::to_value(rep).expect("report serializes");
    Output { text: format!("{rep}\n{}", rep.to_json()), json: js, code }
}

fn dispatch(cli: &Cli) -> deltaring::Result<Output> {
    let lim = limits(cli);
    match &cli.cmd {
        Command::Gb { ring, ideal, order } => {
            let r = load_ring(&ring.ring)?;
            let i = r.lift(&ideal_in(&r, &ideal.ideal, lim)?)?;
            let ord = match order {
                OrderArg::Lex => MonomialOrder::Lex,
                OrderArg::Degrevlex => MonomialOrder::DegRevLex,
            };
            let mut basis = i.groebner(&ord)?.to_vec();
            basis.sort_by(|a, b| ord.cmp(b.leading_monomial(&ord).unwrap(), a.leading_monomial(&ord).unwrap()));
            let gens: Vec<String> = basis.iter().map(|g| g.to_text()).collect();
            Ok(out(print_ideal(&basis), json!({ "basis": gens })))
        }
        Command::Nf { ring, ideal, poly } => {
            let r = load_ring(&ring.ring)?;
            let i = r.lift(&ideal_in(&r, &ideal.ideal, lim)?)?;
            let nf = i.normal_form(&r.poly(poly)?)?;
            Ok(out(nf.to_text(), json!({ "normal_form": nf.to_text() })))
        }
        Command::Member { ring, ideal, poly } => {
            let r = load_ring(&ring.ring)?;
            let i = r.lift(&ideal_in(&r, &ideal.ideal, lim)?)?;
            let m = i.contains(&r.poly(poly)?)?;
            Ok(out(m.to_string(), json!({ "member": m })))
        }
        Command::Intersect { ring, ideal, with } => {
            let r = load_ring(&ring.ring)?;
            let i = ideal_in(&r, &ideal.ideal, lim)?.intersect(&ideal_in(&r, with, lim)?)?;
            Ok(out(r.display_ideal(&i)?, json!({ "ideal": ideal_json(&r, &i)? })))
        }
        Command::Colon { ring, ideal, by, by_ideal } => {
            let r = load_ring(&ring.ring)?;
            let i = r.lift(&ideal_in(&r, &ideal.ideal, lim)?)?;
            let c = match (by, by_ideal) {
                (Some(f), _) => i.colon(&r.poly(f)?)?,
                (None, Some(j)) => i.colon_ideal(&ideal_in(&r, j, lim)?)?,
                (None, None) => return Err(usage("colon needs --by or --by-ideal")),
            };
            Ok(out(r.display_ideal(&c)?, json!({ "ideal": ideal_json(&r, &c)? })))
        }
        Command::Sat { ring, ideal, by } => {
            let r = load_ring(&ring.ring)?;
            let s = r.lift(&ideal_in(&r, &ideal.ideal, lim)?)?.saturate(&r.poly(by)?)?;
            Ok(out(r.display_ideal(&s)?, json!({ "ideal": ideal_json(&r, &s)? })))
        }
        Command::Eliminate { ring, ideal, vars } => {
            let r = load_ring(&ring.ring)?;
            let idx = vars
                .iter()
                .map(|v| r.ring().var_index(v.trim()).ok_or_else(|| usage(format!("unknown variable `{v}`"))))
                .collect::<deltaring::Result<Vec<_>>>()?;
            let e = r.lift(&ideal_in(&r, &ideal.ideal, lim)?)?.eliminate(&idx)?;
            let (text, js) = plain_ideal(&e)?;
            Ok(out(text, json!({ "ideal": js })))
        }
        Command::Dclose { ring, ideal, bound } => {
            let r = load_ring(&ring.ring)?;
            let c = delta_close(&ideal_in(&r, &ideal.ideal, lim)?, &r, *bound)?;
            let text = format!("{}, certified={}, rounds={}", r.display_ideal(&c.result)?, c.certified, c.rounds);
            Ok(out(
                text,
                json!({ "ideal": ideal_json(&r, &c.result)?, "certified": c.certified, "rounds": c.rounds, "bound": c.bound }),
            ))
        }
        Command::Disideal { ring, ideal } => {
            let r = load_ring(&ring.ring)?;
            let d = dideal::is_delta_ideal(&ideal_in(&r, &ideal.ideal, lim)?, &r)?;
            Ok(out(d.to_string(), json!({ "delta_ideal": d })))
        }
        Command::Dmember { ring, ideal, poly, bound } => {
            let r = load_ring(&ring.ring)?;
            let m = delta_member(&r.poly(poly)?, &ideal_in(&r, &ideal.ideal, lim)?, &r, *bound)?;
            Ok(match m {
                DeltaMembership::Yes => out("yes", json!({ "member": true })),
                DeltaMembership::NotFoundAtBound { bound, certified } => out(
                    format!("not-found-at-bound {bound}, certified={certified}"),
                    json!({ "member": false, "bound": bound, "certified": certified }),
                ),
            })
        }
        Command::RadicalDelta { ring, ideal, bound, rounds } => {
            let r = load_ring(&ring.ring)?;
            let res = radical_delta(&ideal_in(&r, &ideal.ideal, lim)?, &r, *bound, *rounds)?;
            let text = format!("{}, fixpoint={}, rounds={}", r.display_ideal(&res.result)?, res.fixpoint, res.rounds);
            Ok(out(text, json!({ "ideal": ideal_json(&r, &res.result)?, "fixpoint": res.fixpoint, "rounds": res.rounds })))
        }
        Command::Psharp { ring, ideal, degree, maxiter } => {
            let r = load_ring(&ring.ring)?;
            let res = psharp(&ideal_in(&r, &ideal.ideal, lim)?, &r, *degree, *maxiter)?;
            psharp_output(&r, &res)
        }
        Command::Traj { ring, ideal, degree } => {
            let r = load_ring(&ring.ring)?;
            let s = AffineDScheme::new(ring.ring.clone(), r);
            let res = traj::trajectory(&ideal_in(&s.ring, &ideal.ideal, lim)?, &s, *degree)?;
            psharp_output(&s.ring, &res)
        }
        Command::Leaf { ring, ideal, fixtures, degree } => {
            let r = load_ring(&ring.ring)?;
            let s = AffineDScheme::new(ring.ring.clone(), r);
            let Some(path) = fixtures else {
                let l = traj::is_leaf(&ideal_in(&s.ring, ideal.as_deref().unwrap_or_default(), lim)?, &s)?;
                return Ok(out(l.to_string(), json!({ "leaf": l })));
            };
            let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read `{path}`: {e}")))?;
            let s = s.with_fixture_json(&text)?;
            let mut lines = Vec::new();
            let mut rows = Vec::new();
            for f in &s.fixtures {
                let gens = f.ideal.clone().with_limits(lim);
                let shown = s.ring.display_ideal(&gens)?;
                let (fin, status) = if s.ring.characteristic() == 0 {
                    let tr = traj::trajectory(&gens, &s, *degree)?;
                    (Some(s.ring.display_ideal(&tr.final_ideal)?), Some(tr.status.to_string()))
                } else {
                    (None, None)
                };
                let traj_text = match (&fin, &status) {
                    (Some(fin), Some(st)) => format!(", trajectory {fin} ({st})"),
                    _ => String::new(),
                };
                lines.push(format!("{}: {shown} leaf={}{traj_text}", f.name, f.delta_ideal));
                rows.push(json!({ "name": f.name, "ideal": shown, "leaf": f.delta_ideal, "trajectory": fin, "status": status }));
            }
            Ok(out(lines.join("\n"), json!({ "fixtures": rows })))
        }
        Command::Fiber { tensor: ta, ideal, elem, at } => {
            let t = tensor(ta)?;
            let c = scalar(at)?;
            if let Some(x) = elem {
                let v = t.fiber_j(&t.parse_elem(x)?, &c)?;
                return Ok(out(v.to_text(), json!({ "value": v.to_text() })));
            }
            let p = t.parse_real_ideal(ideal.as_deref().unwrap_or_default())?.with_limits(lim);
            let (text, js) = plain_ideal(&traj::fiber_intersection(&t, &p, &c)?)?;
            Ok(out(text, json!({ "ideal": js })))
        }
        Command::SvdpExtend { tensor: ta, ideal } => {
            let t = tensor(ta)?;
            let e = t.extend_ideal(&t.parse_base_ideal(&ideal.ideal)?.with_limits(lim))?;
            let (text, js) = plain_ideal(&e)?;
            Ok(out(text, json!({ "ideal": js })))
        }
        Command::SvdpContract { tensor: ta, ideal } => {
            let t = tensor(ta)?;
            let c = t.contract_ideal(&t.parse_real_ideal(&ideal.ideal)?.with_limits(lim))?;
            let (text, js) = plain_ideal(&c)?;
            Ok(out(text, json!({ "ideal": js })))
        }
        Command::SvdpReduce { tensor: ta, ideal, elem } => {
            let t = tensor(ta)?;
            let j = t.parse_real_ideal(&ideal.ideal)?.with_limits(lim);
            let cert = t.svdp_reduce(&t.parse_elem(elem)?, &j)?;
            let pairs: Vec<(String, String)> = cert.iter().map(|(a, l)| (a.to_text(), l.to_text())).collect();
            let text = if pairs.is_empty() {
                "0".to_string()
            } else {
                pairs.iter().map(|(a, l)| format!("({a}) (x) ({l})")).collect::<Vec<_>>().join(" + ")
            };
            let js: Vec<Value> = pairs.iter().map(|(a, l)| json!({ "a": a, "lambda": l })).collect();
            Ok(out(text, json!({ "terms": js })))
        }
        Command::SvdpLength { tensor: ta, elem } => {
            let t = tensor(ta)?;
            let n = tensor_length(&t.parse_elem(elem)?);
            Ok(out(n.to_string(), json!({ "length": n })))
        }
        Command::Ore { left, right, apply } => {
            let k = k_ring();
            let p = ore_mul(&LinDiffOp::parse(left, &k)?, &LinDiffOp::parse(right, &k)?)?;
            match apply {
                None => Ok(out(p.to_string(), json!({ "product": p.to_string() }))),
                Some(l) => {
                    let v = op_apply(&p, &parse_poly(l, &k)?)?;
                    Ok(out(format!("{p}\n{}", v.to_text()), json!({ "product": p.to_string(), "value": v.to_text() })))
                }
            }
        }
        Command::Ann { lambda, maxord, coeffdeg } => {
            let basis = ann_operator(&parse_poly(lambda, &k_ring())?, *maxord, *coeffdeg)?;
            let ops: Vec<String> = basis.iter().map(|o| o.to_string()).collect();
            Ok(out(ops.join("\n"), json!({ "basis": ops })))
        }
        Command::UnitOp { lambda } => {
            let u = unit_operator(&parse_poly(lambda, &k_ring())?)?;
            Ok(out(u.to_string(), json!({ "operator": u.to_string() })))
        }
        Command::Constants { ring, degree } => {
            let r = load_ring(&ring.ring)?;
            let c = constants_truncated(&r, *degree)?;
            let basis: Vec<String> = c.basis.iter().map(|b| b.to_text()).collect();
            let text = format!("span{{{}}}, dim={}", basis.join(", "), c.dim());
            Ok(out(text, json!({ "basis": basis, "dim": c.dim(), "graded_stable": c.graded_stable, "bound": c.bound })))
        }
        Command::Localize { ring, poly } => {
            let r = load_ring(&ring.ring)?;
            let loc = localize(&r, &r.poly(poly)?)?;
            let spec = RingSpec::of(&loc);
            Ok(out(spec.to_json(), serde_json::to_value(&spec).expect("spec serializes")))
        }
        Command::SimpleScan { ring, samples, bound } => {
            let r = load_ring(&ring.ring)?;
            let polys: Vec<Poly> = parse_poly_list(samples, r.ring())?;
            let s = AffineDScheme::new(ring.ring.clone(), r);
            Ok(match traj::simplicity_scan(&s, &polys, *bound)? {
                SimplicityVerdict::SimpleConsistent => out("simple-consistent", json!({ "verdict": "simple-consistent" })),
                SimplicityVerdict::ProperDeltaIdeal(w) => out(
                    format!("proper-delta-ideal {}", s.ring.display_ideal(&w)?),
                    json!({ "verdict": "proper-delta-ideal", "witness": ideal_json(&s.ring, &w)? }),
                ),
            })
        }
        Command::MainCheck { tensor: ta, q, leaf, at, degree } => {
            let t = tensor(ta)?;
            let qi = t.parse_base_ideal(q)?.with_limits(lim);
            let leaf = match leaf {
                Some(src) => t.parse_real_ideal(src)?.with_limits(lim),
                None => t.extend_ideal(&qi)?,
            };
            let rep = traj::main_theorem_check(&t, &qi, &leaf, &scalar(at)?, *degree)?;
            Ok(report_output(&rep))
        }
        Command::Verify { suite, seed, cases, sequential } => {
            let strategy = if *sequential { Strategy::Sequential } else { Strategy::Parallel };
            let rep = run_suite(suite, &SuiteConfig { seed: *seed, cases: *cases, strategy })?;
            Ok(report_output(&rep))
        }
    }
}
