use std::fmt::Write as _;

use num_bigint::BigInt;
use serde_json::{json, Value};

use cubicfields::cubic::{build_rcp, build_rcp_witula, build_scp, is_rcp, rcp_params_from_coeffs, witula_zeros};
use cubicfields::expr::{parse_equation, parse_expression};
use cubicfields::gaussian::{gaussian_periods, lehmer_prime, period_differences, period_minimal_poly, shanks_primes};
use cubicfields::identities::{
    extended_identity_check, gauss_period_cbrt_identity, ramanujan_cbrt_sum_check, verify_expression, verify_named,
    IdentityReport, CATALOG,
};
use cubicfields::roots::{rcp_zeros, resolvent, scp_zeros, solve_cubic_trig, ZeroTriple};
use cubicfields::sequences::{trace_power_sum, RecurrenceSpec, WalkTable};
use cubicfields::{Cubic, HighReal, PrecisionPolicy, RcpParams};

use crate::args::{Command, IdentityCommand, OeisArgs, RootsCommand, SeqCommand, TermArgs};
use crate::bfile::{BFile, SequenceId};
use crate::oeis::{default_cache_dir, fetch_bfile, offline_from_env};
use crate::output::{fixed, fixed_all, strings, Document};
use crate::CliError;

/// A finished command: its document, its text rendering, and whether the
/// check it performed (if any) passed.
pub struct Outcome {
    pub doc: Document,
    pub text: String,
    pub passed: bool,
}

impl Outcome {
    fn ok(doc: Document, text: String) -> Self {
        Outcome { doc, text, passed: true }
    }
}

struct Ctx {
    digits: u32,
    policy: PrecisionPolicy,
}

impl Ctx {
    fn work(&self) -> u32 {
        self.policy.working_digits()
    }

    fn value(&self, text: &str) -> Result<HighReal, CliError> {
        let e = parse_expression(text).map_err(|e| CliError::Usage(format!("in `{text}`: {e}")))?;
        Ok(e.evaluate(self.work())?)
    }

    fn fx(&self, x: &HighReal) -> String {
        fixed(x, self.digits)
    }
}

pub fn dispatch(command: Command, digits: u32) -> Result<Outcome, CliError> {
    let ctx = Ctx { digits, policy: PrecisionPolicy::new(digits) };
    match command {
        Command::Roots(r) => roots(&ctx, r),
        Command::Periods { p } => periods(&ctx, p),
        Command::ShanksPrimes { limit } => shanks(&ctx, limit),
        Command::Minpoly { h } => minpoly(&ctx, h),
        Command::Deltas { p } => deltas(&ctx, p),
        Command::Identity(i) => identity(&ctx, i),
        Command::Verify { equation } => verify(&ctx, &equation),
        Command::Seq(s) => seq(&ctx, s),
        Command::OeisCheck(args) => oeis_check(&ctx, args),
    }
}

fn max_residual(c: &Cubic<HighReal>, zeros: &[HighReal]) -> HighReal {
    zeros.iter().map(|z| c.eval(z).abs()).max().unwrap_or_else(|| HighReal::zero(10))
}

fn zeros_outcome(ctx: &Ctx, mut doc: Document, zt: &ZeroTriple<HighReal>, c: &Cubic<HighReal>) -> Outcome {
    let residual = max_residual(c, zt.zeros());
    doc.zeros = Some(fixed_all(zt.zeros(), ctx.digits));
    doc.residual = Some(ctx.fx(&residual));
    let mut text = String::new();
    for z in zt.zeros() {
        writeln!(text, "{}", ctx.fx(z)).unwrap();
    }
    writeln!(text, "residual {}", ctx.fx(&residual)).unwrap();
    Outcome::ok(doc, text)
}

fn roots(ctx: &Ctx, cmd: RootsCommand) -> Result<Outcome, CliError> {
    match cmd {
        RootsCommand::Cubic { a3, a2, a1, a0 } => {
            let coeffs = [a3, a2, a1, a0];
            let values: Vec<HighReal> = coeffs.iter().map(|t| ctx.value(t)).collect::<Result<_, _>>()?;
            let c = Cubic::new(values[0].clone(), values[1].clone(), values[2].clone(), values[3].clone())?;
            let zt = solve_cubic_trig(&c)?;
            let mut doc = Document::new("roots.cubic", ctx.digits);
            for (name, t) in ["a3", "a2", "a1", "a0"].iter().zip(&coeffs) {
                doc = doc.input(name, t);
            }
            let m = c.monic_normalize();
            let ramanujan = is_rcp(&m.a2, &m.a1, &m.a0, &ctx.policy);
            doc.report_entry("ramanujan", ramanujan);
            let mut out = zeros_outcome(ctx, doc, &zt, &c);
            if let (true, Ok(params)) = (ramanujan, rcp_params_from_coeffs(&m.a2, &m.a1, &m.a0, &ctx.policy)) {
                out.doc.report_entry("h", ctx.fx(params.h()));
                out.doc.report_entry("s", ctx.fx(params.s()));
                writeln!(out.text, "ramanujan cubic with h = {}, s = {}", ctx.fx(params.h()), ctx.fx(params.s()))
                    .unwrap();
            } else {
                writeln!(out.text, "not a ramanujan cubic").unwrap();
            }
            Ok(out)
        }
        RootsCommand::Scp { h } => {
            let hv = ctx.value(&h)?;
            let zt = scp_zeros(&hv);
            let doc = Document::new("roots.scp", ctx.digits).input("h", &h);
            Ok(zeros_outcome(ctx, doc, &zt, &build_scp(&hv)))
        }
        RootsCommand::Rcp { h, s, explain } => {
            let (hv, sv) = (ctx.value(&h)?, ctx.value(&s)?);
            let params = RcpParams::new(hv.clone(), sv.clone())?;
            let c = build_rcp(&params);
            let zt = rcp_zeros(&params);
            let doc = Document::new("roots.rcp", ctx.digits).input("h", &h).input("s", &s);
            let mut out = zeros_outcome(ctx, doc, &zt, &c);
            if explain {
                out.text.push_str(&explain_rcp(ctx, &hv, &sv, &c)?);
            }
            Ok(out)
        }
        RootsCommand::Witula { gamma, r } => {
            let (g, rv) = (ctx.value(&gamma)?, ctx.value(&r)?);
            let zeros = witula_zeros(&g, &rv)?;
            let c = build_rcp_witula(&g, &rv)?;
            let zt = ZeroTriple::from_values(zeros, None);
            let doc = Document::new("roots.witula", ctx.digits).input("gamma", &gamma).input("r", &r);
            let mut out = zeros_outcome(ctx, doc, &zt, &c);
            let [a3, a2, a1, a0] = c.coeffs().map(|x| ctx.fx(x));
            writeln!(out.text, "cubic ({a3}) x^3 + ({a2}) x^2 + ({a1}) x + ({a0})").unwrap();
            Ok(out)
        }
    }
}

fn explain_rcp(ctx: &Ctx, h: &HighReal, s: &HighReal, c: &Cubic<HighReal>) -> Result<String, CliError> {
    let mut t = String::new();
    let scp = build_scp(h);
    let r = resolvent(&scp)?;
    writeln!(t, "shanks cubic x^3 - h x^2 - (h+3) x - 1 with h = {}", ctx.fx(h)).unwrap();
    writeln!(t, "  resolvent w^2 + f w - e^3/27: e = {}, f = {}", ctx.fx(&r.e), ctx.fx(&r.f)).unwrap();
    writeln!(t, "  zeros alpha +- i beta: alpha = {}, beta = {}", ctx.fx(&r.alpha), ctx.fx(&r.beta)).unwrap();
    writeln!(t, "  theta = arctan(beta/alpha) = {}", ctx.fx(&r.theta)).unwrap();
    let sign = if h >= &HighReal::from_fraction(-3, 2, ctx.work()) { "+" } else { "-" };
    writeln!(t, "  form (h {sign} 2 sqrt(tau) cos((theta + k pi)/3))/3, k = 0, 2, 4").unwrap();
    let shanks = scp_zeros(h);
    if let Some(b) = shanks.branches() {
        for (z, k) in shanks.zeros().iter().zip(b) {
            writeln!(t, "    k = {k}: {}", ctx.fx(z)).unwrap();
        }
    }
    let scaled = shanks.map(|z| -s * z);
    let flipped = scp_zeros(h).map(|z| -s * -z);
    writeln!(t, "-s * zeta(h, -1): max |rho| = {}", ctx.fx(&max_residual(c, scaled.zeros()))).unwrap();
    writeln!(t, "-s * zeta(h, 1):  max |rho| = {}", ctx.fx(&max_residual(c, flipped.zeros()))).unwrap();
    Ok(t)
}

fn periods(ctx: &Ctx, p: u64) -> Result<Outcome, CliError> {
    let set = gaussian_periods(p, &ctx.policy)?;
    let mut doc = Document::new("periods", ctx.digits).input("p", p);
    let mut text = format!("p = {p}, g = {}\n", set.g());
    doc.report_entry("g", set.g().to_string());
    if let (Some(h), Some(l)) = (set.h(), set.l()) {
        doc.report_entry("h", h.to_string());
        doc.report_entry("L", l.to_string());
        writeln!(text, "shanks prime: h = {h}, L = {l}").unwrap();
    }
    let cosets: Vec<Value> = set.cosets().iter().map(strings).collect();
    doc.report_entry("cosets", cosets);
    doc.report_entry("periods", strings(fixed_all(set.values(), ctx.digits)));
    for (k, (c, v)) in set.cosets().iter().zip(set.values()).enumerate() {
        let members: Vec<String> = c.iter().map(|j| j.to_string()).collect();
        writeln!(text, "C{k} = {{{}}}", members.join(", ")).unwrap();
        writeln!(text, "eta{k} = {}", ctx.fx(v)).unwrap();
    }
    let residual = match set.h() {
        Some(h) => {
            let g = period_minimal_poly(h)?.map(|r| HighReal::from_ratio(r, ctx.work()));
            writeln!(text, "minimal polynomial {}", period_minimal_poly(h)?).unwrap();
            max_residual(&g, set.values())
        }
        None => {
            let sum = set.values().iter().fold(HighReal::from_i64(1, ctx.work()), |acc, v| acc + v);
            sum.abs()
        }
    };
    writeln!(text, "residual {}", ctx.fx(&residual)).unwrap();
    doc.residual = Some(ctx.fx(&residual));
    Ok(Outcome::ok(doc, text))
}

fn shanks(ctx: &Ctx, limit: u64) -> Result<Outcome, CliError> {
    let pairs = shanks_primes(limit);
    let mut doc = Document::new("shanks-primes", ctx.digits).input("limit", limit);
    doc.terms = Some(pairs.iter().map(|(h, p)| json!({ "h": h.to_string(), "p": p.to_string() })).collect());
    let mut text = String::from("h p\n");
    for (h, p) in &pairs {
        writeln!(text, "{h} {p}").unwrap();
    }
    Ok(Outcome::ok(doc, text))
}

fn minpoly(ctx: &Ctx, h: i64) -> Result<Outcome, CliError> {
    let p = lehmer_prime(h)?;
    let g = period_minimal_poly(h)?;
    let set = gaussian_periods(p, &ctx.policy)?;
    let residual = max_residual(&g.map(|r| HighReal::from_ratio(r, ctx.work())), set.values());
    let mut doc = Document::new("minpoly", ctx.digits).input("h", h);
    doc.report_entry("p", p.to_string());
    doc.report_entry("L", set.l().map(|l| l.to_string()).unwrap_or_default());
    doc.report_entry("coefficients", strings(g.coeffs()));
    doc.report_entry("polynomial", g.to_string());
    doc.residual = Some(ctx.fx(&residual));
    let text = format!("p = {p}\n{g}\nresidual {}\n", ctx.fx(&residual));
    Ok(Outcome::ok(doc, text))
}

fn deltas(ctx: &Ctx, p: u64) -> Result<Outcome, CliError> {
    let set = period_differences(p, &ctx.policy)?;
    let w = ctx.work();
    let lehmer = Cubic::monic(HighReal::zero(w), HighReal::from_i64(-(p as i64), w), HighReal::from_i64(p as i64, w));
    let residual = max_residual(&lehmer, set.deltas());
    let mut doc = Document::new("deltas", ctx.digits).input("p", p);
    doc.zeros = Some(fixed_all(set.deltas(), ctx.digits));
    doc.report_entry("h", set.h().to_string());
    doc.report_entry("orientation", set.orientation().to_string());
    doc.report_entry("closed_form", strings(fixed_all(set.closed_form(), ctx.digits)));
    doc.report_entry("branches", strings(set.branches()));
    doc.residual = Some(ctx.fx(&residual));
    let mut text = format!("p = {p}, h = {}, orientation {:+}\n", set.h(), set.orientation());
    for ((d, c), k) in set.deltas().iter().zip(set.closed_form()).zip(set.branches()) {
        writeln!(text, "{}  closed form k = {k}: {}", ctx.fx(d), ctx.fx(c)).unwrap();
    }
    writeln!(text, "residual {}", ctx.fx(&residual)).unwrap();
    Ok(Outcome::ok(doc, text))
}

fn report_outcome(ctx: &Ctx, mut doc: Document, report: &IdentityReport) -> Outcome {
    doc.report_entry("name", report.name.clone());
    doc.report_entry("lhs", ctx.fx(&report.lhs));
    doc.report_entry("rhs", ctx.fx(&report.rhs));
    doc.report_entry("verdict", report.verdict.to_string());
    doc.residual = Some(ctx.fx(&report.residual));
    let text = format!(
        "{}\nlhs      {}\nrhs      {}\nresidual {}\n{}\n",
        report.name,
        ctx.fx(&report.lhs),
        ctx.fx(&report.rhs),
        ctx.fx(&report.residual),
        report.verdict
    );
    Outcome { doc, text, passed: report.passed() }
}

fn identity(ctx: &Ctx, cmd: IdentityCommand) -> Result<Outcome, CliError> {
    match cmd {
        IdentityCommand::Ramanujan { h, s } => {
            let report = ramanujan_cbrt_sum_check(&ctx.value(&h)?, &ctx.value(&s)?, ctx.digits)?;
            let doc = Document::new("identity.ramanujan", ctx.digits).input("h", &h).input("s", &s);
            Ok(report_outcome(ctx, doc, &report))
        }
        IdentityCommand::Extended { alpha, s } => {
            let report = extended_identity_check(&ctx.value(&alpha)?, &ctx.value(&s)?, ctx.digits)?;
            let doc = Document::new("identity.extended", ctx.digits).input("alpha", &alpha).input("s", &s);
            Ok(report_outcome(ctx, doc, &report))
        }
        IdentityCommand::Gauss { h } => {
            let report = gauss_period_cbrt_identity(h, ctx.digits)?;
            let doc = Document::new("identity.gauss", ctx.digits).input("h", h);
            Ok(report_outcome(ctx, doc, &report))
        }
        IdentityCommand::Named { name: _, list: true } => {
            let mut doc = Document::new("identity.catalog", ctx.digits);
            doc.terms = Some(CATALOG.iter().map(|e| json!({ "name": e.name, "lhs": e.lhs, "rhs": e.rhs })).collect());
            let text = CATALOG.iter().map(|e| format!("{}: {} == {}\n", e.name, e.lhs, e.rhs)).collect();
            Ok(Outcome::ok(doc, text))
        }
        IdentityCommand::Named { name, list: false } => {
            let name = name.unwrap_or_default();
            let report = verify_named(&name, ctx.digits)?;
            let doc = Document::new("identity.named", ctx.digits).input("name", &name);
            Ok(report_outcome(ctx, doc, &report))
        }
    }
}

fn verify(ctx: &Ctx, equation: &str) -> Result<Outcome, CliError> {
    let (lhs, rhs) = parse_equation(equation).map_err(|e| CliError::Usage(format!("in `{equation}`: {e}")))?;
    let report = verify_expression(&lhs, &rhs, ctx.digits)?;
    let doc = Document::new("verify", ctx.digits).input("equation", equation);
    Ok(report_outcome(ctx, doc, &report))
}

fn terms_outcome(mut doc: Document, id: Option<&str>, terms: Vec<BigInt>, opts: &TermArgs) -> Outcome {
    doc.terms = Some(terms.iter().map(|t| Value::String(t.to_string())).collect());
    let text = if opts.bfile {
        let id: SequenceId = id.unwrap_or("A000000").parse().expect("valid id");
        BFile::from_terms(id, 0, terms).to_string()
    } else {
        let joined: Vec<String> = terms.iter().map(|t| t.to_string()).collect();
        format!("{}\n", joined.join(" "))
    };
    Outcome::ok(doc, text)
}

fn seq(ctx: &Ctx, cmd: SeqCommand) -> Result<Outcome, CliError> {
    match cmd {
        SeqCommand::A198636(opts) => {
            let terms = RecurrenceSpec::a198636().terms(opts.terms);
            let doc = Document::new("seq.a198636", ctx.digits).input("terms", opts.terms);
            Ok(terms_outcome(doc, Some("A198636"), terms, &opts))
        }
        SeqCommand::Trace { h, k, terms: opts } => {
            if k == 0 {
                return Err(CliError::Usage("--k must be positive".into()));
            }
            let terms = (0..opts.terms as u64).map(|n| trace_power_sum(h, k, n)).collect();
            let doc = Document::new("seq.trace", ctx.digits).input("h", h).input("k", k).input("terms", opts.terms);
            Ok(terms_outcome(doc, None, terms, &opts))
        }
        SeqCommand::Walks { n, terms: opts } => {
            let table = WalkTable::new(n as usize);
            let terms = (0..opts.terms as u64).map(|l| table.walks(l)).collect();
            let doc = Document::new("seq.walks", ctx.digits).input("n", n).input("terms", opts.terms);
            Ok(terms_outcome(doc, None, terms, &opts))
        }
    }
}

/// Local terms for the sequences this tool can generate, with their offsets.
fn local_terms(id: &SequenceId, args: &OeisArgs) -> Result<(i64, Vec<BigInt>), CliError> {
    match id.as_str() {
        "A198636" => Ok((0, RecurrenceSpec::a198636().terms(args.terms))),
        "A005471" => Ok((1, shanks_primes(args.limit).into_iter().map(|(_, p)| BigInt::from(p)).collect())),
        other => Err(CliError::Usage(format!("no local generator for {other}; supported: A005471, A198636"))),
    }
}

fn oeis_check(ctx: &Ctx, args: OeisArgs) -> Result<Outcome, CliError> {
    let id: SequenceId = args.id.parse().map_err(|e: crate::bfile::BadSequenceId| CliError::Usage(e.to_string()))?;
    let (offset, mut local) = local_terms(&id, &args)?;
    let offline = args.offline || offline_from_env();
    let (bfile, source) = fetch_bfile(&id, &default_cache_dir(), offline)?;
    let mut remote: Vec<(i64, BigInt)> = bfile.rows.iter().filter(|(n, _)| *n >= offset).cloned().collect();
    if id.as_str() == "A005471" {
        // compare primes up to the limit, or up to the end of the b-file if that comes first
        let last = remote.last().map(|r| r.1.clone()).unwrap_or_default();
        let bound = BigInt::from(args.limit).min(last);
        remote.retain(|(_, a)| *a <= bound);
        local.retain(|a| *a <= bound);
    } else {
        remote.truncate(local.len());
        local.truncate(remote.len());
    }
    let mismatch = local
        .iter()
        .zip(&remote)
        .find(|(mine, (_, theirs))| mine != &theirs)
        .map(|(mine, (n, theirs))| (*n, mine.clone(), theirs.clone()));
    let length_ok = local.len() == remote.len();
    let passed = mismatch.is_none() && length_ok && !local.is_empty();

    let mut doc = Document::new("oeis-check", ctx.digits).input("id", &id);
    if id.as_str() == "A005471" {
        doc = doc.input("limit", args.limit);
    } else {
        doc = doc.input("terms", args.terms);
    }
    doc.report_entry("source", source.name());
    doc.report_entry("compared", local.len().min(remote.len()).to_string());
    doc.report_entry("local_count", local.len().to_string());
    doc.report_entry("bfile_count", remote.len().to_string());
    doc.report_entry(
        "first_mismatch",
        mismatch
            .as_ref()
            .map(|(n, mine, theirs)| json!({ "n": n.to_string(), "local": mine.to_string(), "bfile": theirs.to_string() }))
            .unwrap_or(Value::Null),
    );
    doc.report_entry("verdict", if passed { "pass" } else { "fail" });
    let mut text =
        format!("{id}: compared {} terms against the {} copy\n", local.len().min(remote.len()), source.name());
    if let Some((n, mine, theirs)) = &mismatch {
        writeln!(text, "mismatch at n = {n}: local {mine}, b-file {theirs}").unwrap();
    } else if !length_ok {
        writeln!(text, "length differs: local {}, b-file {}", local.len(), remote.len()).unwrap();
    }
    text.push_str(if passed { "pass\n" } else { "fail\n" });
    Ok(Outcome { doc, text, passed })
}
