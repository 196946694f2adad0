//! Dispatch from parsed arguments to computations.

use serde_json::{json, Map, Value};

use tcrcalc::abelian::{render_invariants, FinAbGroup, GroupHom};
use tcrcalc::barcalc::{
    abelian_report, check_abelian_closed_form, check_finite_abelian, components, GroupInv, GroupSpec,
};
use tcrcalc::mackey::{constant_mackey, fixedpoint_mackey, norm_cofiber_homotopy, norm_pair, rep_sphere_homotopy};
use tcrcalc::ringkit::{is_prime, mu_is_iso, ring_chart, InvName, ProRing, RingSpec};
use tcrcalc::tcr::{
    char2_field_closed_form, ml_check, oracle_matches, pi0_trr_green, tcr_odd_perfect_field, tcr_phi_char2_field,
    tcr_phi_odd, tcr_phi_perfect_algebra, tcr_phi_torsionfree, tcr_phi_z_oracle, trr_phi_limit, trr_phi_oracle,
    trr_phi_tower, TcrReport,
};
use tcrcalc::{Ctx, Error, Result};

use crate::args::{BarArgs, BredonArgs, Command, GreenCommand, MackeyKind, TcrCommand, TrrCommand, WittArgs};

pub const MAX_WINDOW: i64 = 64;
pub const MAX_DEPTH: usize = 12;

/// Result of one command in both renderings.
pub struct Output {
    pub json: Value,
    pub text: String,
}

pub fn parse_window(s: &str) -> Result<(i64, i64)> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("window '{s}' is not of the form lo:hi")))?;
    let num = |t: &str| {
        t.trim()
            .parse::<i64>()
            .map_err(|_| Error::Parse(format!("bad window bound '{t}'")))
    };
    let (lo, hi) = (num(lo)?, num(hi)?);
    if lo > hi {
        return Err(Error::Invalid(format!("empty window {lo}:{hi}")));
    }
    if lo.abs() > MAX_WINDOW || hi.abs() > MAX_WINDOW {
        return Err(Error::Invalid(format!(
            "window bounds must lie in -{MAX_WINDOW}..{MAX_WINDOW}"
        )));
    }
    Ok((lo, hi))
}

fn check_depth(what: &str, n: usize) -> Result<()> {
    if n == 0 || n > MAX_DEPTH {
        return Err(Error::Invalid(format!("{what} must be between 1 and {MAX_DEPTH}")));
    }
    Ok(())
}

fn check_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::Invalid(format!("{p} is not prime")));
    }
    Ok(())
}

fn inv_json(g: &FinAbGroup) -> Value {
    json!(g.invariants())
}

pub fn dispatch(cmd: &Command, ctx: &Ctx) -> Result<Output> {
    match cmd {
        Command::Witt(a) => witt(a, ctx),
        Command::Bredon(a) => bredon(a, ctx),
        Command::Tcr(c) => tcr(c, ctx),
        Command::Trr(c) => trr(c, ctx),
        Command::Mu(r) => mu(&r.ring, ctx),
        Command::Green(c) => green(c, ctx),
        Command::Bar(a) => bar(a, ctx),
        Command::Fixtures(_) => Err(Error::Internal("fixtures are dispatched by the runner".into())),
    }
}

fn witt(a: &WittArgs, ctx: &Ctx) -> Result<Output> {
    check_prime(a.prime)?;
    check_depth("Witt length", a.level)?;
    let r = RingSpec::parse(&a.ring)?.finite(ctx)?;
    let w = tcrcalc::witt::witt_structure(&r.ring, a.prime, a.level, ctx)?;
    let g = w.group();
    Ok(Output {
        json: json!({
            "input": a.ring,
            "prime": a.prime,
            "length": a.level,
            "invariants": inv_json(g),
        }),
        text: format!("W_{}({};{}) ≅ {}\n", a.level, a.ring, a.prime, g),
    })
}

fn bredon(a: &BredonArgs, ctx: &Ctx) -> Result<Output> {
    let (name, groups) = match a.mackey {
        MackeyKind::Constant => {
            let g = if a.ring.trim() == "Z" {
                FinAbGroup::integers()
            } else {
                let r = RingSpec::parse(&a.ring)?.finite(ctx)?;
                ring_chart(&r.ring, ctx)?.group().clone()
            };
            (
                format!("constant({})", a.ring.trim()),
                rep_sphere_homotopy(&constant_mackey(&g), a.weight)?,
            )
        }
        MackeyKind::NormPair => {
            let (g, w) = norm_pair();
            (
                "norm-pair".to_string(),
                rep_sphere_homotopy(&fixedpoint_mackey(&g, &w)?, a.weight)?,
            )
        }
        MackeyKind::Cofiber => ("cofiber".to_string(), norm_cofiber_homotopy(a.weight)?),
    };
    let mut text = format!("π_*^{{C₂}} Σ^{{{}ρ}} H{}\n", a.weight, name);
    for line in groups.render_lines() {
        text.push_str(&format!("  {line}\n"));
    }
    Ok(Output {
        json: json!({
            "mackey": name,
            "weight": a.weight,
            "window": [groups.window.0, groups.window.1],
            "groups": groups.to_json(),
        }),
        text,
    })
}

fn report(r: TcrReport, extra: &[(&str, Value)]) -> Output {
    let mut text = r.render_text();
    let mut json = r.to_json();
    if let Value::Object(m) = &mut json {
        for (k, v) in extra {
            m.insert(k.to_string(), v.clone());
            text.push_str(&format!("  {k}: {v}\n"));
        }
    }
    Output { json, text }
}

fn tcr(c: &TcrCommand, ctx: &Ctx) -> Result<Output> {
    match c {
        TcrCommand::Phi { ring, prime, window } => {
            check_prime(*prime)?;
            let window = parse_window(&window.window)?;
            let spec = RingSpec::parse(ring)?;
            if *prime != 2 {
                let a = spec.finite(ctx)?;
                let r = tcr_phi_odd(&a, *prime, ctx)?;
                let text = format!(
                    "TCR({ring};{prime})^φZ/2: π₀ = {}, transfer onto: {}\n",
                    r.pi0, r.tr_surjective
                );
                return Ok(Output {
                    json: json!({
                        "input": ring,
                        "theorem": "odd-prime-transfer-quotient",
                        "prime": prime,
                        "groups": {"0": inv_json(&r.pi0)},
                        "tr_surjective": r.tr_surjective,
                        "vanishes": r.pi0.is_trivial(),
                    }),
                    text,
                });
            }
            if spec.inv != InvName::Trivial {
                return Err(Error::Invalid(
                    "at p = 2 only the trivial involution is supported".into(),
                ));
            }
            if spec.is_pro() {
                let b = ProRing::new(spec.clone());
                let t = tcr_phi_torsionfree(&b, window, ctx)?;
                let oracle_checked = if spec.to_string() == "Z" {
                    let o = tcr_phi_z_oracle(window, ctx)?;
                    if !o.same_groups(&t.groups) {
                        return Err(Error::Internal(
                            "two-cell oracle disagrees with the torsion-free formula".into(),
                        ));
                    }
                    true
                } else {
                    false
                };
                let r = TcrReport {
                    input: ring.clone(),
                    theorem: "torsion-free-four-periodic".into(),
                    groups: t.groups,
                    oracle_checked,
                };
                return Ok(report(r, &[("stable_level", json!(t.level))]));
            }
            let a = spec.finite(ctx)?;
            if a.ring.char_prime() != Some(2) {
                return Err(Error::Invalid(format!(
                    "{ring} is neither a 2-torsion-free pro-ring nor an F₂-algebra"
                )));
            }
            let r = if a.ring.is_field(ctx)? {
                let g = tcr_phi_char2_field(&a.ring, window, ctx)?;
                let closed = char2_field_closed_form(&a.ring, window, ctx)?;
                if !closed.same_groups(&g) {
                    return Err(Error::Internal("closed form disagrees with ker/coker of r − f".into()));
                }
                TcrReport {
                    input: ring.clone(),
                    theorem: "char2-perfect-field".into(),
                    groups: g,
                    oracle_checked: true,
                }
            } else {
                TcrReport {
                    input: ring.clone(),
                    theorem: "perfect-f2-algebra".into(),
                    groups: tcr_phi_perfect_algebra(&a.ring, window, ctx)?,
                    oracle_checked: false,
                }
            };
            Ok(report(r, &[]))
        }
        TcrCommand::OddField {
            ring,
            prime,
            depth,
            window,
        } => {
            check_depth("depth", *depth)?;
            let window = parse_window(&window.window)?;
            let a = RingSpec::parse(ring)?.finite(ctx)?;
            let r = tcr_odd_perfect_field(&a.ring, *prime, *depth, window, ctx)?;
            let rep = TcrReport {
                input: ring.clone(),
                theorem: "odd-perfect-field-truncated".into(),
                groups: r.groups,
                oracle_checked: false,
            };
            Ok(report(rep, &[("depth", json!(depth)), ("stable", json!(r.stable))]))
        }
    }
}

/// Smallest `m ≥ 1` with `f^m = id`, if at most `bound`.
fn hom_order(f: &GroupHom, bound: usize) -> Result<Option<usize>> {
    let id = GroupHom::identity(f.source());
    let mut p = f.clone();
    for m in 1..=bound {
        if p.equals(&id) {
            return Ok(Some(m));
        }
        p = f.compose(&p)?;
    }
    Ok(None)
}

fn trr(c: &TrrCommand, ctx: &Ctx) -> Result<Output> {
    match c {
        TrrCommand::Tower { ring, level, window } => {
            check_depth("level", *level)?;
            let window = parse_window(&window.window)?;
            let k = RingSpec::parse(ring)?.finite(ctx)?.ring;
            let t = trr_phi_tower(&k, *level, window, ctx)?;
            t.check_involution()?;
            let o = trr_phi_oracle(&k, *level, window, ctx)?;
            let oracle_checked = oracle_matches(&t, &o)?;
            if !oracle_checked {
                return Err(Error::Internal(
                    "Mayer-Vietoris oracle disagrees with the closed form".into(),
                ));
            }
            let mut degrees = Map::new();
            let mut text = format!("TRR^{}({ring};2)^φZ/2\n", level);
            for (d, td) in &t.degrees {
                let r_img = td.r.image().0;
                let f_img = td.f.image().0;
                degrees.insert(
                    d.to_string(),
                    json!({
                        "labels": td.labels.iter().map(|&(n, m)| [n, m]).collect::<Vec<_>>(),
                        "group": inv_json(&td.group),
                        "r_image": inv_json(&r_img),
                        "f_image": inv_json(&f_img),
                    }),
                );
                text.push_str(&format!("  π_{d} = {}  im R = {}  im F = {}\n", td.group, r_img, f_img));
            }
            text.push_str(&format!("  oracle checked: {oracle_checked}\n"));
            Ok(Output {
                json: json!({
                    "input": ring,
                    "level": level,
                    "window": [window.0, window.1],
                    "degrees": degrees,
                    "oracle_checked": oracle_checked,
                }),
                text,
            })
        }
        TrrCommand::Limit { ring, window } => {
            let window = parse_window(&window.window)?;
            let k = RingSpec::parse(ring)?.finite(ctx)?.ring;
            let lim = trr_phi_limit(&k, window, ctx)?;
            let mut orders = Map::new();
            let mut text = format!("TRR({ring};2)^φZ/2\n");
            for (d, f) in &lim.frobenius {
                let o = hom_order(f, 64)?;
                orders.insert(d.to_string(), json!(o));
                text.push_str(&format!(
                    "  π_{d} = {}  order of F: {}\n",
                    lim.groups.get(*d),
                    o.map_or("?".to_string(), |o| o.to_string())
                ));
            }
            Ok(Output {
                json: json!({
                    "input": ring,
                    "window": [window.0, window.1],
                    "groups": lim.groups.to_json(),
                    "periodicity": lim.groups.periodicity,
                    "frobenius_order": orders,
                }),
                text,
            })
        }
    }
}

fn mu(ring: &str, ctx: &Ctx) -> Result<Output> {
    let a = RingSpec::parse(ring)?.finite(ctx)?;
    let r = mu_is_iso(&a, ctx)?;
    if r.iso {
        return Ok(Output {
            json: json!({"mu_iso": true}),
            text: format!("μ is an isomorphism for {ring}\n"),
        });
    }
    let witness = r.witness.clone().unwrap_or_default();
    Ok(Output {
        json: json!({
            "mu_iso": false,
            "kernel": inv_json(&r.kernel),
            "witness": witness,
        }),
        text: format!(
            "μ is not an isomorphism for {ring}: ker μ ≅ {}, witness {witness}\n",
            render_invariants(&r.kernel.invariants())
        ),
    })
}

fn green(c: &GreenCommand, ctx: &Ctx) -> Result<Output> {
    match c {
        GreenCommand::Pi0 { ring, level } => {
            check_depth("level", *level)?;
            let a = RingSpec::parse(ring)?.finite(ctx)?;
            let g = pi0_trr_green(&a, *level, ctx)?;
            g.check_axioms(ctx)?;
            Ok(Output {
                json: json!({
                    "input": ring,
                    "level": level,
                    "witt_length": level + 1,
                    "fixed": inv_json(g.fixed_group()),
                    "underlying": inv_json(g.underlying_group()),
                    "axioms_checked": true,
                }),
                text: format!(
                    "π₀ TRR^{level}({ring};2): fixed {}, underlying {}, Green axioms hold\n",
                    g.fixed_group(),
                    g.underlying_group()
                ),
            })
        }
        GreenCommand::Ml { ring, depth } => {
            check_depth("depth", *depth)?;
            let a = RingSpec::parse(ring)?.finite(ctx)?;
            let r = ml_check(&a, *depth, ctx)?;
            let levels: Map<String, Value> = r.levels.iter().map(|(n, ok)| (n.to_string(), json!(ok))).collect();
            let mut text = format!("Mittag-Leffler check for {ring}\n");
            for (n, ok) in &r.levels {
                text.push_str(&format!(
                    "  n = {n}: R is {}an isomorphism\n",
                    if *ok { "" } else { "not " }
                ));
            }
            Ok(Output {
                json: json!({
                    "input": ring,
                    "levels": levels,
                    "witt_conclusion": r.witt_conclusion,
                }),
                text,
            })
        }
    }
}

fn bar(a: &BarArgs, ctx: &Ctx) -> Result<Output> {
    let spec = GroupSpec::parse(&a.group)?;
    let mut out = Map::new();
    out.insert("group".into(), json!(a.group));
    let mut text = format!("B(G^Z/2, G, G^Z/2) for G = {}\n", a.group);
    let mut abelian_trivial = spec.is_abelian() && spec.inv == GroupInv::Trivial;
    if spec.is_finite() {
        let m = spec.finite(ctx)?;
        abelian_trivial |= m.group.is_abelian() && m.w.iter().enumerate().all(|(g, &wg)| g == wg);
        let d = components(&m, ctx)?;
        out.insert("order".into(), json!(m.group.order()));
        out.insert("fixed_points".into(), json!(m.fixed().len()));
        if let Value::Object(c) = d.to_json(&m) {
            out.extend(c);
        }
        let (fixed, pairs) = d.tau_orbits();
        text.push_str(&format!(
            "  components: {}, fixed by τ: {}, free τ-pairs: {}\n",
            d.len(),
            fixed.len(),
            pairs.len()
        ));
        for (c, &(x, y)) in d.reps.iter().enumerate() {
            let (px, py) = d.reps[d.psi[c]];
            let (tx, ty) = d.reps[d.tau[c]];
            let aut = match &d.aut_invariants[c] {
                Some(inv) => render_invariants(inv),
                None => format!("non-abelian of order {}", d.aut[c].len()),
            };
            let n = |e: usize| m.group.name(e).to_string();
            text.push_str(&format!(
                "  [{},{}]  Aut = {aut}  ψ ↦ [{},{}]  τ ↦ [{},{}]\n",
                n(x),
                n(y),
                n(px),
                n(py),
                n(tx),
                n(ty)
            ));
        }
    } else if !abelian_trivial {
        return Err(Error::Invalid(
            "infinite groups are supported only when abelian with trivial involution".into(),
        ));
    }
    if abelian_trivial {
        let g = spec.abelian()?;
        match abelian_report(&g) {
            Ok(r) => {
                let checked = if g.is_finite() {
                    check_finite_abelian(&g, ctx)?
                } else {
                    check_abelian_closed_form(&g, 4, ctx)?
                };
                if !checked {
                    return Err(Error::Internal(
                        "abelian closed form disagrees with the general formulas".into(),
                    ));
                }
                text.push_str(&format!(
                    "  census: {} summands of type S ∨ RP^∞_-1, {} of pullback type\n  τ-fixed: {}, (2G∖4G)×G/2: {}\n  closed form checked: {checked}\n",
                    r.type_one, r.type_two, r.tau_fixed, r.two_g_minus_four_g
                ));
                out.insert("abelian".into(), r.to_json());
                out.insert("closed_form_checked".into(), json!(checked));
            }
            Err(e @ Error::Refused { .. }) if g.is_finite() => {
                text.push_str(&format!("  census: {e}\n"));
                out.insert("abelian".into(), json!({"refused": e.to_string()}));
            }
            Err(e) => return Err(e),
        }
    }
    Ok(Output {
        json: Value::Object(out),
        text,
    })
}
