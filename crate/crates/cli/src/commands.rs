use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use rtau::adversary::{adversarial_pair, degree_retention_check, descent_demo, Descent};
use rtau::chains::{compare_to_qe, normalize_positive, BoundRecord};
use rtau::classify::{non_ufd_witness, scan_sh, WitnessBox, WitnessPrimes};
use rtau::json::Int;
use rtau::nt::primes_up_to;
use rtau::{DivBranch, DivisionChain, NormTuple, RingContext, RingElement, ZPoly};
use serde_json::{json, Value};

use crate::{ChainArgs, Command, Failure};

/// A result rendered both ways; `text` ends with a newline.
pub struct Output {
    pub text: String,
    pub json: Value,
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

fn element(s: &str) -> Result<RingElement, Failure> {
    s.parse::<RingElement>()
        .map_err(|e| Failure::Usage(format!("{e} in {s:?}")))
}

fn int_poly(s: &str) -> Result<ZPoly, Failure> {
    let e = element(s)?;
    if *e.den() != BigInt::from(1) {
        return Err(Failure::Usage(format!(
            "{s:?} is not an integer polynomial"
        )));
    }
    Ok(e.num().clone())
}

fn list(v: &[RingElement]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn norm(t: &NormTuple) -> String {
    let parts: Vec<String> = t.to_vec().iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn build_chain(ctx: &RingContext, args: &ChainArgs) -> Result<DivisionChain, Failure> {
    let a = element(&args.a)?;
    let b = element(&args.b)?;
    let qs = args
        .quotients
        .iter()
        .map(|q| element(q))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DivisionChain::new(ctx, a, b, qs)?)
}

pub fn dispatch(ctx: &RingContext, cmd: &Command) -> Result<Output, Failure> {
    match cmd {
        Command::Member { element: e } => member(ctx, &element(e)?),
        Command::Divmod { q, r } => divmod(ctx, &element(q)?, &element(r)?),
        Command::Gcd { a, b } => gcd(ctx, &element(a)?, &element(b)?),
        Command::Chain { a, b, max_steps } => chain(ctx, &element(a)?, &element(b)?, *max_steps),
        Command::Normalize(args) => normalize(&build_chain(ctx, args)?),
        Command::Compare(args) => compare(ctx, &build_chain(ctx, args)?),
        Command::Adversary {
            k,
            b,
            descent: None,
            ..
        } => adversary(ctx, *k, &element(b)?),
        Command::Adversary {
            k,
            descent: Some(steps),
            norms,
            ..
        } => {
            let table = norms.as_deref().map(read_norms).transpose()?;
            descent(ctx, *k, *steps, table.as_ref())
        }
        Command::Scan { h, pmax, kmax } => scan(ctx, &int_poly(h)?, *pmax, *kmax),
        Command::Witness {
            h,
            depth,
            pmax,
            kmax,
            strategy,
        } => {
            let bounds = WitnessBox {
                p_max: *pmax,
                k_max: *kmax,
            };
            witness(ctx, &int_poly(h)?, *depth, (*strategy).into(), bounds)
        }
        Command::Tau { pmax, kmax } => tau(ctx, *pmax, *kmax),
    }
}

fn member(ctx: &RingContext, e: &RingElement) -> Result<Output, Failure> {
    let w = ctx.membership_witness(e);
    let text = match &w {
        None => "true\n".to_string(),
        Some(w) => format!(
            "false\nh(tau_{}) = {} mod {}^{}\n",
            w.p, w.residue, w.p, w.k
        ),
    };
    let mut json = json!({ "element": e, "member": w.is_none() });
    if let Some(w) = w {
        json["witness"] = to_json(&w);
    }
    Ok(Output { text, json })
}

fn divmod(ctx: &RingContext, q: &RingElement, r: &RingElement) -> Result<Output, Failure> {
    let d = ctx.divmod_traced(q, r)?;
    let branch = match d.branch {
        DivBranch::Borrow => "borrow",
        DivBranch::Shift => "shift",
    };
    let text = format!(
        "p = {}\ns = {}\nbranch = {branch}\n",
        d.quotient, d.remainder
    );
    let json = json!({ "q": q, "r": r, "p": d.quotient, "s": d.remainder, "branch": d.branch });
    Ok(Output { text, json })
}

fn gcd(ctx: &RingContext, a: &RingElement, b: &RingElement) -> Result<Output, Failure> {
    let bz = ctx.gcd_bezout(a, b)?;
    let text = format!(
        "g = {}\nu = {}\nv = {}\n({}) * ({}) + ({}) * ({}) = {}\n",
        bz.g, bz.u, bz.v, bz.u, a, bz.v, b, bz.g
    );
    let json = json!({ "a": a, "b": b, "g": bz.g, "u": bz.u, "v": bz.v });
    Ok(Output { text, json })
}

fn chain(
    ctx: &RingContext,
    a: &RingElement,
    b: &RingElement,
    max_steps: usize,
) -> Result<Output, Failure> {
    let t = ctx.qe_trace(a, b, max_steps)?;
    let mut text = format!("a = {a}\nb = {b}\n");
    writeln!(text, "phi(a, b) = {}", norm(&t.phi[0])).unwrap();
    for (i, (q, r)) in t.quotients.iter().zip(&t.remainders).enumerate() {
        writeln!(
            text,
            "{}\tq = {q}\tr = {r}\tphi = {}",
            i + 1,
            norm(&t.phi[i + 1])
        )
        .unwrap();
    }
    writeln!(text, "length = {}", t.quotients.len()).unwrap();
    Ok(Output {
        text,
        json: to_json(&t),
    })
}

fn describe(c: &DivisionChain) -> String {
    format!("q = {}\tr = {}", list(c.quotients()), list(c.remainders()))
}

fn normalize(c: &DivisionChain) -> Result<Output, Failure> {
    let n = normalize_positive(c)?;
    let mut text = format!("input\t{}\n", describe(&n.input));
    for s in &n.steps {
        let (rule, i) = match s.rewrite {
            rtau::chains::Rewrite::T1(i) => ("t1", i),
            rtau::chains::Rewrite::T2(i) => ("t2", i),
        };
        writeln!(
            text,
            "{rule} at {i}\t{}\tmeasure = {:?}",
            describe(&s.chain),
            s.measure
        )
        .unwrap();
    }
    writeln!(text, "output\t{}", describe(&n.output)).unwrap();
    writeln!(
        text,
        "k = {}, l = {}, n_Q = {}, within bounds = {}",
        n.input.len(),
        n.output.len(),
        n.n_q,
        n.within_bounds()
    )
    .unwrap();
    let mut json = to_json(&n);
    json["within_bounds"] = n.within_bounds().into();
    Ok(Output { text, json })
}

fn bound_line(r: &BoundRecord) -> String {
    format!(
        "l = {}\t|r_l| = {}\tf_{} = {}\t{}",
        r.l, r.r_abs, r.f_index, r.bound, r.satisfied
    )
}

fn compare(ctx: &RingContext, c: &DivisionChain) -> Result<Output, Failure> {
    let cmp = compare_to_qe(ctx, c)?;
    let mut text = format!(
        "chain\t{}\nqe\t{}\n",
        describe(&cmp.chain),
        describe(&cmp.qe)
    );
    for r in &cmp.records {
        writeln!(text, "{}", bound_line(r)).unwrap();
    }
    if let Some(r) = &cmp.last_bound {
        writeln!(text, "last\t{}", bound_line(r)).unwrap();
    }
    writeln!(text, "verdict = {}", cmp.verdict).unwrap();
    Ok(Output {
        text,
        json: to_json(&cmp),
    })
}

fn adversary(ctx: &RingContext, k: usize, b: &RingElement) -> Result<Output, Failure> {
    let pair = adversarial_pair(ctx, k, b)?;
    let rep = degree_retention_check(ctx, &pair)?;
    let degrees: Vec<String> = rep.degrees.iter().map(ToString::to_string).collect();
    let hats: Vec<String> = rep.hats.iter().map(ToString::to_string).collect();
    let text = format!(
        "k = {}\nb = {}\n(c, d) = ({}, {})\nbeta = {}\na = {}\ndegrees = [{}]\nhats = [{}]\nhat chain valid = {}\nverdict = {}\n",
        rep.k,
        rep.b,
        rep.c,
        rep.d,
        rep.beta,
        rep.a,
        degrees.join(", "),
        hats.join(", "),
        rep.hat_chain_valid,
        rep.verdict
    );
    Ok(Output {
        text,
        json: to_json(&rep),
    })
}

fn read_norms(path: &Path) -> Result<HashMap<RingElement, u64>, Failure> {
    let s = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let raw: HashMap<String, u64> = serde_json::from_str(&s)
        .map_err(|e| Failure::Usage(format!("norm table {}: {e}", path.display())))?;
    raw.into_iter()
        .map(|(k, v)| Ok((element(&k)?, v)))
        .collect()
}

fn show_norm(n: Option<u64>) -> String {
    n.map_or_else(|| "-".to_string(), |n| n.to_string())
}

fn descent(
    ctx: &RingContext,
    k: usize,
    steps: usize,
    table: Option<&HashMap<RingElement, u64>>,
) -> Result<Output, Failure> {
    let d: Descent = descent_demo(ctx, k, steps, table)?;
    let mut text = format!("k = {k}\n");
    for s in &d.steps {
        writeln!(
            text,
            "j = {}\tb = {}\ta = {}\tl = {}\tnext = {}\tN(b) = {}\tN(next) = {}",
            s.j,
            s.b,
            s.a,
            s.l,
            s.next,
            show_norm(s.norm_b),
            show_norm(s.norm_next)
        )
        .unwrap();
    }
    match d.broken_at {
        Some(j) => writeln!(text, "norm fails to decrease at j = {j}").unwrap(),
        None if table.is_some() => writeln!(text, "norm decreases at every step shown").unwrap(),
        None => {}
    }
    Ok(Output {
        text,
        json: to_json(&d),
    })
}

fn scan(ctx: &RingContext, h: &ZPoly, pmax: u64, kmax: u32) -> Result<Output, Failure> {
    let s = scan_sh(ctx, h, pmax, kmax)?;
    let mut text = format!("h = {h}\np <= {pmax}, k <= {kmax}\n");
    for hit in &s.hits {
        let exact = match hit.exact_root {
            Some(true) => "\texact root",
            Some(false) => "\tnot a root",
            None => "",
        };
        let sat = if hit.saturated { "\tsaturated" } else { "" };
        writeln!(text, "p = {}\tdepth = {}{sat}{exact}", hit.p, hit.depth).unwrap();
    }
    writeln!(text, "primes = {}", s.hits.len()).unwrap();
    Ok(Output {
        text,
        json: to_json(&s),
    })
}

fn witness(
    ctx: &RingContext,
    h: &ZPoly,
    depth: usize,
    strategy: rtau::WitnessStrategy,
    bounds: WitnessBox,
) -> Result<Output, Failure> {
    let w = non_ufd_witness(ctx, h, depth, strategy, bounds)?;
    let (text, json) = match &w {
        None => (
            format!(
                "h = {h}\nno witness with p <= {}, k <= {}\n",
                bounds.p_max, bounds.k_max
            ),
            json!({ "h": coeffs(h), "witness": null }),
        ),
        Some(w) => {
            let primes = match &w.primes {
                WitnessPrimes::PrimePower(p) => format!("powers of {p}"),
                WitnessPrimes::DistinctPrimes(ps) => {
                    let ps: Vec<String> = ps.iter().map(ToString::to_string).collect();
                    format!("distinct primes {}", ps.join(", "))
                }
            };
            let mut text = format!("h = {h}\n{primes}\n");
            for e in &w.chain {
                writeln!(text, "{e}").unwrap();
            }
            (text, json!({ "h": coeffs(h), "witness": w }))
        }
    };
    Ok(Output { text, json })
}

fn coeffs(h: &ZPoly) -> Value {
    Value::Array(
        h.coeffs()
            .iter()
            .map(|c| to_json(&Int(c.clone())))
            .collect(),
    )
}

fn tau(ctx: &RingContext, pmax: u64, kmax: u32) -> Result<Output, Failure> {
    let spec = ctx.tau();
    let mut text = format!("tau = {}\n", spec.to_json());
    let mut rows = Vec::new();
    for p in primes_up_to(pmax) {
        let r = spec.query(p, kmax);
        let mut rest = r.value.clone();
        let digits: Vec<BigInt> = (0..kmax)
            .map(|_| {
                let d = &rest % p;
                rest /= p;
                d
            })
            .collect();
        let shown: Vec<String> = digits.iter().map(ToString::to_string).collect();
        writeln!(
            text,
            "p = {p}\tdigits = [{}]\tvalue = {} mod {p}^{kmax}",
            shown.join(", "),
            r.value
        )
        .unwrap();
        rows.push(json!({ "p": p, "digits": digits_json(&digits), "residue": r }));
    }
    let json = json!({ "tau": serde_json::from_str::<Value>(&spec.to_json()).expect("tau json"), "kmax": kmax, "primes": rows });
    Ok(Output { text, json })
}

fn digits_json(d: &[BigInt]) -> Vec<Value> {
    d.iter()
        .map(|x| json!(u64::try_from(x).expect("digit below p")))
        .collect()
}
