use std::io::Read;

use serde_json::{json, Value};
use smoothring::calgebra::{
    character_bijection, compatibility_classes, compatibility_graph, parse_document, smooth_pairs,
    type_c_submodules, type_d_submodules, FiniteAlgebra,
};
use smoothring::rings::{proper_witness, semi_integral_verdict};
use smoothring::smoothfn::{
    decompose_at, derivative_at, integrality_obstruction, jet_at, AbsorbingVerdict, Omega, SmoothExpr,
};
use smoothring::syntax::{parse_expr, print_expr, print_jet};
use smoothring::witness::{verify_nonextension, WitnessConfig};
use smoothring::{Error, Ring, RingElement};

use crate::{AlgebraCmd, Cli, Command, ExprArgs, Format, RingCmd, SmoothCmd, WitnessCmd};

pub struct Output {
    pub text: String,
    pub json: Value,
    pub code: u8,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, code: 0 }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => format!("{}\n", serde_json::to_string_pretty(&self.json).expect("serialisable")),
        }
    }
}

pub struct Failure {
    pub error: Error,
    pub code: u8,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        let code = match error {
            Error::Parse { .. }
            | Error::ElementSyntax { .. }
            | Error::InvalidRing(_)
            | Error::Document(_)
            | Error::ExponentValidation { .. }
            | Error::DepthExceeded { .. } => 2,
            _ => 3,
        };
        Failure { error, code }
    }
}

type CmdResult = Result<Output, Failure>;

/// Errors in user-supplied text are usage errors.
fn input<T>(r: smoothring::Result<T>) -> Result<T, Failure> {
    r.map_err(|error| Failure { error, code: 2 })
}

fn elide(s: String, limit: Option<usize>) -> String {
    match limit {
        Some(l) if s.len() > l && l >= 2 => {
            format!("{}...{} ({} digits)", &s[..l / 2], &s[s.len() - l / 2..], s.len())
        }
        _ => s,
    }
}

pub fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Ring(RingCmd::Check { ring, bound }) => ring_check(ring, *bound),
        Command::Algebra(AlgebraCmd::Analyze { file, enumerate_type_c, enumerate_type_d, compat_graph, smooth_pairs }) => {
            algebra_analyze(file, *enumerate_type_c, *enumerate_type_d, *compat_graph, *smooth_pairs)
        }
        Command::Smooth(cmd) => smooth(cmd, cli.digits_limit),
        Command::Witness(WitnessCmd::Verify { depth, allow_deep }) => {
            let config = WitnessConfig { depth: *depth, allow_deep: *allow_deep, ..Default::default() };
            let report = verify_nonextension(&config)?;
            Ok(Output {
                text: report.render_text(cli.digits_limit),
                json: serde_json::to_value(&report).expect("serialisable"),
                code: if report.verdict { 0 } else { 1 },
            })
        }
    }
}

fn ring_check(text: &str, bound: u64) -> CmdResult {
    let ring: Ring = input(text.parse())?;
    let verdict = semi_integral_verdict(&ring, bound);
    let proper = proper_witness(&ring);
    let proper_text = match &proper {
        Some(w) => format!("true (witness {})", ring.format_element(w)),
        None => "false".into(),
    };
    let detail = verdict.to_string();
    let reason = detail
        .split_once('(')
        .map(|(_, r)| r.trim_end_matches(')').to_string())
        .unwrap_or_default();
    Ok(Output {
        text: format!("semi-integral: {verdict}\nproper: {proper_text}\n"),
        json: json!({
            "ring": ring.to_string(),
            "semi_integral": verdict.is_semi_integral(),
            "semi_integral_reason": reason,
            "proper": proper.is_some(),
            "proper_witness": proper.map(|w| ring.format_element(&w)),
        }),
        code: if verdict.is_semi_integral() { 0 } else { 1 },
    })
}

fn read_source(file: &str) -> Result<String, Failure> {
    let mut text = String::new();
    let res = if file == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(file).map(|t| text = t)
    };
    res.map_err(|e| Failure { error: Error::Document(format!("cannot read {file}: {e}")), code: 2 })?;
    Ok(text)
}

fn algebra_analyze(file: &str, type_c: bool, type_d: bool, graph: bool, pairs: bool) -> CmdResult {
    let alg: FiniteAlgebra = input(parse_document(&read_source(file)?))?;
    let fmt_list = |v: &[smoothring::calgebra::Submodule]| v.iter().map(|s| alg.format_submodule(s)).collect::<Vec<_>>();
    let bij = character_bijection(&alg)?;
    let ideals: Vec<_> = bij.iter().map(|(_, s)| s.clone()).collect();
    let mut text = format!(
        "algebra: GF({}), rank {}, basis {}\ncharacters: {}\ntype-C ideals: {}\n",
        alg.prime(),
        alg.rank(),
        alg.names().join(", "),
        bij.len(),
        fmt_list(&ideals).join(", ")
    );
    let mut out = json!({
        "base": format!("GF({})", alg.prime()),
        "rank": alg.rank(),
        "basis": alg.names(),
        "characters": bij.len(),
        "type_c_ideals": fmt_list(&ideals),
    });
    if type_c {
        let subs = fmt_list(&type_c_submodules(&alg)?);
        text.push_str(&format!("type-C submodules ({}): {}\n", subs.len(), subs.join(", ")));
        out["type_c_submodules"] = json!(subs);
    }
    let universe = if type_d || graph { type_d_submodules(&alg)? } else { vec![] };
    if type_d {
        let subs = fmt_list(&universe);
        text.push_str(&format!("type-D submodules ({}): {}\n", subs.len(), subs.join(", ")));
        out["type_d_submodules"] = json!(subs);
    }
    if graph {
        let adj = compatibility_graph(&alg, &universe);
        let classes = compatibility_classes(&alg, &universe);
        let mut edges = vec![];
        for (i, row) in adj.iter().enumerate() {
            for &j in row.iter().filter(|&&j| j > i) {
                edges.push((i, j));
            }
        }
        let edge_text = if edges.is_empty() {
            "none".to_string()
        } else {
            edges.iter().map(|(i, j)| format!("{i}-{j}")).collect::<Vec<_>>().join(", ")
        };
        let count = classes.iter().max().map_or(0, |m| m + 1);
        text.push_str(&format!(
            "compatibility edges ({}): {edge_text}\ncompatibility classes ({count}), by submodule: {}\n",
            edges.len(),
            classes.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
        ));
        out["compatibility_edges"] = json!(edges);
        out["compatibility_classes"] = json!(classes);
    }
    if pairs {
        let found = smooth_pairs(&alg)?;
        text.push_str(&format!("smooth pairs: {}\n", found.len()));
        let mut list = vec![];
        for (i, p) in found.iter().enumerate() {
            let sigma = fmt_list(&p.sigma);
            let structure = fmt_list(&p.structure);
            text.push_str(&format!("  pair {i}: sigma {{{}}}, structure {{{}}}\n", sigma.join(", "), structure.join(", ")));
            list.push(json!({ "sigma": sigma, "structure": structure }));
        }
        out["smooth_pairs"] = json!(list);
    }
    Ok(Output::ok(text, out))
}

struct Context {
    ring: Ring,
    omega: Omega,
    expr: SmoothExpr,
}

fn context(e: &ExprArgs) -> Result<Context, Failure> {
    let ring: Ring = input(e.ring.parse())?;
    let omega = match &e.omega {
        Some(o) => input(Omega::parse(ring, o))?,
        None => Omega::whole(ring),
    };
    let expr = input(parse_expr(&e.expr, &ring, &omega))?;
    Ok(Context { ring, omega, expr })
}

fn element(ring: &Ring, text: &str) -> Result<RingElement, Failure> {
    input(ring.parse_element(text))
}

fn value_output(ring: &Ring, v: &RingElement, limit: Option<usize>) -> Output {
    let s = ring.format_element(v);
    Output::ok(format!("{}\n", elide(s.clone(), limit)), json!({ "value": s }))
}

fn smooth(cmd: &SmoothCmd, limit: Option<usize>) -> CmdResult {
    match cmd {
        SmoothCmd::Eval { e, at } => {
            let c = context(e)?;
            let t = element(&c.ring, at)?;
            Ok(value_output(&c.ring, &c.expr.eval(&c.omega, &t)?, limit))
        }
        SmoothCmd::Derive { e, at, order } => {
            let c = context(e)?;
            let t = element(&c.ring, at)?;
            Ok(value_output(&c.ring, &derivative_at(&c.omega, &c.expr, &t, *order)?, limit))
        }
        SmoothCmd::Jet { e, at, order } => {
            let c = context(e)?;
            let t = element(&c.ring, at)?;
            let jet = jet_at(&c.omega, &c.expr, &t, *order)?;
            let coeffs: Vec<String> = jet.coeffs().iter().map(|a| c.ring.format_element(a)).collect();
            Ok(Output::ok(
                format!("{}\n", print_jet(&jet)),
                json!({ "base": c.ring.format_element(&t), "order": order, "coefficients": coeffs, "jet": print_jet(&jet) }),
            ))
        }
        SmoothCmd::Decompose { e, at } => {
            let c = context(e)?;
            let t = element(&c.ring, at)?;
            let (v, cof) = decompose_at(&c.omega, &c.expr, &t)?;
            let v = c.ring.format_element(&v);
            let cof = print_expr(&c.ring, &cof);
            Ok(Output::ok(
                format!("value: {}\ncofactor: {cof}\n", elide(v.clone(), limit)),
                json!({ "value": v, "cofactor": cof }),
            ))
        }
        SmoothCmd::CheckAbsorbing { ring, omega, bound } => {
            let ring: Ring = input(ring.parse())?;
            let omega = match omega {
                Some(o) => input(Omega::parse(ring, o))?,
                None => Omega::whole(ring),
            };
            let (text, verdict, witness, code) = match omega.is_absorbing(*bound) {
                AbsorbingVerdict::Verified => ("verified".to_string(), "verified", Value::Null, 0),
                AbsorbingVerdict::Falsified { lambda, alpha } => {
                    let (l, a) = (ring.format_element(&lambda), ring.format_element(&alpha));
                    (format!("falsified (lambda {l}, alpha {a})"), "falsified", json!({ "lambda": l, "alpha": a }), 1)
                }
                AbsorbingVerdict::Inconclusive => ("inconclusive".to_string(), "inconclusive", Value::Null, 3),
            };
            Ok(Output {
                text: format!("absorbing: {text}\n"),
                json: json!({ "omega": omega.to_string(), "absorbing": verdict, "witness": witness }),
                code,
            })
        }
        SmoothCmd::Obstruction { e, divisor, window, order } => obstruction(e, divisor.as_deref(), window, *order),
    }
}

fn parse_window(text: &str) -> Option<(i64, i64)> {
    let (lo, hi) = text.split_once("..")?;
    let (lo, hi) = (lo.trim().parse().ok()?, hi.trim().parse().ok()?);
    (lo <= hi).then_some((lo, hi))
}

fn obstruction(e: &ExprArgs, divisor: Option<&str>, window: &str, order: usize) -> CmdResult {
    let c = context(e)?;
    let (lo, hi) = parse_window(window).ok_or_else(|| Failure {
        error: Error::Parse { position: 0, expected: "a window lo..hi".into(), found: format!("`{window}`") },
        code: 2,
    })?;
    let d = divisor.map(|d| element(&c.ring, d)).transpose()?;
    let points: Vec<RingElement> = if c.ring == Ring::integers() {
        let whole = Omega::whole(c.ring);
        let reach = lo.unsigned_abs().max(hi.unsigned_abs()) as usize;
        (0..=2 * reach)
            .filter_map(|i| whole.enumerate(i))
            .filter(|t| {
                let v = c.ring.as_integer(t).expect("integer");
                *v >= lo.into() && *v <= hi.into() && c.omega.contains(t)
            })
            .collect()
    } else {
        (0..(hi - lo + 1) as usize).filter_map(|i| c.omega.enumerate(i)).collect()
    };
    let ring = c.ring;
    let found = integrality_obstruction(&ring, &points, order, |t| {
        let v = c.expr.eval(&c.omega, t)?;
        match &d {
            None => Ok(v),
            Some(d) => ring.divide_exact(&v, d).ok_or_else(|| {
                Error::Precondition(format!(
                    "value {} at {} is not a multiple of {}",
                    ring.format_element(&v),
                    ring.format_element(t),
                    ring.format_element(d)
                ))
            }),
        }
    })?;
    let f = |x: &RingElement| ring.format_element(x);
    Ok(match found {
        Some(w) => Output {
            text: format!(
                "witness: order {}, t {}, lambda {}, difference quotient {}/{} not in {}\n",
                w.order,
                f(&w.t),
                f(&w.lambda),
                f(&w.numerator),
                f(&w.denominator),
                ring
            ),
            json: json!({
                "witness": {
                    "order": w.order,
                    "path": w.path.iter().map(f).collect::<Vec<_>>(),
                    "t": f(&w.t),
                    "lambda": f(&w.lambda),
                    "numerator": f(&w.numerator),
                    "denominator": f(&w.denominator),
                }
            }),
            code: 1,
        },
        None => Output::ok(
            format!("witness: none ({} points, order {order}; not a smoothness proof)\n", points.len()),
            json!({ "witness": Value::Null, "points": points.len(), "order": order }),
        ),
    })
}
