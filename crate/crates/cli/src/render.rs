//! Plain-text renderings of the reports.

use std::fmt::Write;

use hochlie_core::derlie::LoopCriterion;
use hochlie_core::kronecker::ChainReport;
use hochlie_core::report::{AlgebraStats, AnalysisReport, LieReport, OracleReport, SepTypeReport};

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn opt<T: std::fmt::Display>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(|| "n/a".to_string(), |v| v.to_string())
}

pub fn algebra(s: &AlgebraStats) -> String {
    format!(
        "algebra over {}: {} vertices, {} arrows, dim {}\n  radical filtration {:?}\n",
        s.field, s.vertices, s.arrows, s.dim, s.rad_dims
    )
}

pub fn lie(name: &str, l: &LieReport) -> String {
    let mut s = format!(
        "{name}: dim {} (derivations {}, inner {})\n  derived series {:?}, solvable: {}\n  lower central series {:?}, nilpotent: {}\n",
        l.dim,
        l.der_dim,
        l.inner_dim,
        l.derived_series.dims,
        yes(l.solvable),
        l.lower_central_series.dims,
        yes(l.nilpotent)
    );
    for (i, b) in l.basis.iter().enumerate() {
        let _ = writeln!(s, "  x{i}: {b}");
    }
    s
}

pub fn loops(lc: &LoopCriterion) -> String {
    let idx: Vec<String> = lc.loops.iter().map(|l| format!("n({})={}", l.arrow, l.n)).collect();
    format!(
        "loop criterion: {} (product {}{})\n",
        if lc.holds { "holds" } else { "fails" },
        lc.product,
        if idx.is_empty() { String::new() } else { format!("; {}", idx.join(", ")) }
    )
}

pub fn septype(s: &SepTypeReport) -> String {
    let mut out = String::from("separated quiver components:\n");
    for c in &s.components {
        let _ = writeln!(out, "  {c}");
    }
    let _ = writeln!(
        out,
        "  radical-square-zero type: {:?}; contains ~A1: {}",
        s.radical_square_zero_type,
        yes(s.contains_a1_tilde)
    );
    out
}

pub fn chains(r: &ChainReport) -> String {
    let mut out = String::new();
    let pairs: Vec<String> = r
        .pairs
        .iter()
        .map(|p| format!("({},{}){}", p.a_label, p.b_label, if p.delta_defined { "" } else { "*" }))
        .collect();
    let _ = writeln!(out, "Kronecker pairs: {}", if pairs.is_empty() { "none".into() } else { pairs.join(" ") });
    for w in &r.wild_parallel_classes {
        let _ = writeln!(out, "  parallel class of {} arrows: {}", w.len(), w.join(", "));
    }
    for (i, c) in r.classes.iter().enumerate() {
        let labels: Vec<String> = c.chain.labels.iter().map(|(a, b)| format!("({a},{b})")).collect();
        let dims: Vec<String> = c.per_pair.iter().map(|p| opt(&p.image_dim)).collect();
        let _ = writeln!(
            out,
            "chain class {}: ({}) {:?}, {} member(s)\n  surjective: {}; image dims [{}]; kernels coincide: {}\n  literal standard relations: S1 {} S2 {} S3 {}",
            i + 1,
            labels.join(","),
            c.chain.shape,
            c.class_size,
            opt(&c.surjective.map(yes)),
            dims.join(", "),
            opt(&c.kernels_coincide.map(yes)),
            yes(c.literal.s1),
            yes(c.literal.s2),
            yes(c.literal.s3)
        );
        for w in &c.literal.witnesses {
            let _ = writeln!(out, "    {} witness: {}", w.condition, w.monomials.join(", "));
        }
        for w in &c.warnings {
            let _ = writeln!(out, "    note: {w}");
        }
    }
    let _ = writeln!(out, "m = {}", opt(&r.m));
    if let Some(sp) = &r.solvable_part {
        let _ = writeln!(
            out,
            "solvable part: dim HH^1_rad - 3m = {}, joint kernel dim {}, solvable: {}",
            sp.expected_dim,
            sp.kernel_dim,
            yes(sp.solvable)
        );
    }
    let f = &r.flags;
    let _ = writeln!(
        out,
        "hypotheses: char != 2: {}, separated quiver non-wild compatible: {}, asserted non-wild: {}{}",
        yes(f.char_ne_2),
        yes(f.qs_nonwild_compatible),
        yes(f.user_asserted_nonwild),
        if f.conditional { " (conclusions conditional)" } else { "" }
    );
    for w in &r.warnings {
        let _ = writeln!(out, "note: {w}");
    }
    out
}

pub fn oracle(o: &OracleReport) -> String {
    format!(
        "cochain complex: dim HH^1 = {}, agrees with derivation count: {}, d1 d0 = 0: {}\n",
        o.bar_hh1_dim,
        yes(o.agrees),
        yes(o.cochain_composite_zero)
    )
}

pub fn analysis(r: &AnalysisReport) -> String {
    let mut s = algebra(&r.algebra);
    s.push_str(&lie("HH^1", &r.hh1));
    s.push_str(&lie("HH^1_rad", &r.hh1_rad));
    s.push_str(&loops(&r.loop_criterion));
    s.push_str(&septype(&r.septype));
    s.push_str(&chains(&r.chains));
    let p = &r.flags.predictions;
    let _ = writeln!(
        s,
        "predictions: HH^1_rad solvable {}, HH^1 solvable (char 2) {}, from m {}; consistent: {}",
        opt(&p.hh1_rad_solvable.map(yes)),
        opt(&p.hh1_solvable_char2.map(yes)),
        opt(&p.hh1_rad_solvable_from_m.map(yes)),
        yes(p.consistent)
    );
    if let Some(o) = &r.oracle {
        s.push_str(&oracle(o));
    }
    s
}
