use std::fmt::Write as _;

use ldtopo::complex::{glue_complexes, FiniteComplex, VertexId};
use ldtopo::connect::{
    definability_of_union, ld_connected, op_connected, witness_search, ComponentDescription, Definability, Schema,
    Side, WitnessMode,
};
use ldtopo::covering::{
    deck_count, finite_cover, lazy_cover, verify_covering, verify_subgroup_image, CoveringComplex, DeckCount,
    Rewriting, Sheets,
};
use ldtopo::group::{
    edge_path_presentation, hurewicz_h1_check, pi2_via_hurewicz, todd_coxeter, whitehead_check, Pi2,
    WhiteheadVerdict, Word,
};
use ldtopo::homology::{
    colimit_homology, homology, induced_map, long_exact_sequence, relative_homology, ChainComplex, FgAbGroup,
    HomologyGroup,
};
use ldtopo::io::{group_json, homology_json, int_json, parse_complex, parse_glue_spec, parse_map, write_complex};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::report::{Input, Outcome};

#[derive(Clone, Copy, Debug)]
pub struct Budgets {
    pub cosets: usize,
    pub stages: usize,
    pub grammar_k: usize,
}

fn basepoint(k: &FiniteComplex, base: Option<u32>) -> Result<VertexId, CliError> {
    match base {
        Some(v) => Ok(VertexId(v)),
        None => k.vertices().next().ok_or_else(|| CliError::Usage("empty complex".into())),
    }
}

fn degrees(k: &FiniteComplex, dim: Option<usize>) -> Vec<usize> {
    match dim {
        Some(n) => vec![n],
        None => (0..=k.dim().unwrap_or(0)).collect(),
    }
}

pub fn homology_cmd(
    input: &Input,
    relative: Option<&Input>,
    dim: Option<usize>,
    colimit: bool,
    b: Budgets,
) -> Result<Outcome, CliError> {
    let file = parse_complex(&input.text)?;
    let mut text = Vec::new();
    if colimit {
        let x = file.exhaustion()?;
        let budget = b.stages.min(x.stage_count() - 1);
        let mut per_degree = Vec::new();
        let mut all_stable = true;
        for n in degrees(x.last(), dim) {
            let c = colimit_homology(&x, n, budget)?;
            all_stable &= c.stable;
            let stages: Vec<String> = c.stages.iter().map(|g| g.to_string()).collect();
            text.push(format!("H_{n} colimit = {} (stages {}; stable: {})", c.group, stages.join(" -> "), c.stable));
            per_degree.push(json!({
                "degree": n,
                "group": group_json(&c.group),
                "stages": c.stages.iter().map(group_json).collect::<Vec<_>>(),
                "isomorphisms": c.maps.iter().map(|m| m.is_isomorphism()).collect::<Vec<_>>(),
                "injective": c.maps.iter().map(|m| m.is_injective()).collect::<Vec<_>>(),
                "stable": c.stable,
                "stable_from": c.stable_from,
            }));
        }
        return Ok(Outcome {
            results: json!({ "stages_used": budget + 1, "colimit": per_degree }),
            verdicts: json!({ "stable": all_stable }),
            text,
        });
    }
    let k = file.complex();
    if let Some(rel) = relative {
        let a = parse_complex(&rel.text)?;
        let a = a.complex();
        let les = long_exact_sequence(k, a)?;
        let mut groups = Vec::new();
        for n in degrees(k, dim) {
            let g = relative_homology(k, a, n)?;
            text.push(format!("H_{n}(K, A) = {g}"));
            groups.push(json!({ "degree": n, "group": group_json(&g) }));
        }
        text.push(format!("long exact sequence exact: {}", les.is_exact()));
        return Ok(Outcome {
            results: json!({ "relative": groups }),
            verdicts: json!({ "exact": les.is_exact() }),
            text,
        });
    }
    let cc = ChainComplex::of(k);
    let groups: Vec<HomologyGroup> = degrees(k, dim).into_iter().map(|n| HomologyGroup::compute(&cc, n)).collect();
    for h in &groups {
        text.push(format!("H_{} = {}", h.degree, h.group));
    }
    let results = match dim {
        Some(_) => homology_json(&groups[0]),
        None => Value::Array(groups.iter().map(homology_json).collect()),
    };
    Ok(Outcome {
        results,
        verdicts: json!({ "euler_characteristic": k.euler_characteristic() }),
        text,
    })
}

pub fn pi1_cmd(input: &Input, base: Option<u32>, b: Budgets) -> Result<Outcome, CliError> {
    let k = parse_complex(&input.text)?.complex().clone();
    let v0 = basepoint(&k, base)?;
    let ep = edge_path_presentation(&k, v0)?;
    let p = &ep.presentation;
    let names = p.generators();
    let relators: Vec<String> = p.relators().iter().map(|r| r.display(names).to_string()).collect();
    let table = todd_coxeter(p, &[], b.cosets);
    let order = table.index();
    let ab = p.abelianization();
    let mut text = vec![
        format!("generators: {}", if names.is_empty() { "none".to_string() } else { names.join(" ") }),
        format!("relators: {}", relators.len()),
    ];
    text.extend(relators.iter().map(|r| format!("  {r}")));
    text.push(format!("abelianization: {ab}"));
    text.push(match order {
        Some(d) => format!("order: {d}"),
        None => format!("order: not found within {} cosets", b.cosets),
    });
    Ok(Outcome {
        results: json!({
            "basepoint": v0.0,
            "generators": names,
            "relators": relators,
            "abelianization": group_json(&ab),
        }),
        verdicts: json!({ "order": order, "certified_trivial": order == Some(1) }),
        text,
    })
}

pub fn hurewicz_cmd(input: &Input, base: Option<u32>, b: Budgets) -> Result<Outcome, CliError> {
    let k = parse_complex(&input.text)?.complex().clone();
    let v0 = basepoint(&k, base)?;
    let h = hurewicz_h1_check(&k, v0)?;
    let pi2 = pi2_via_hurewicz(&k, v0, b.cosets)?;
    let pi2_json = match &pi2 {
        Pi2::Certified(g) => group_json(g),
        Pi2::Undetermined => json!("undetermined"),
    };
    let pi2_text = match &pi2 {
        Pi2::Certified(g) => g.to_string(),
        Pi2::Undetermined => "undetermined".to_string(),
    };
    Ok(Outcome {
        results: json!({
            "abelianized_pi1": group_json(&h.abelianized_pi1),
            "h1": group_json(&h.h1),
            "pi2": pi2_json,
        }),
        verdicts: json!({ "agrees": h.agrees }),
        text: vec![
            format!("pi1^ab = {}", h.abelianized_pi1),
            format!("H_1 = {}", h.h1),
            format!("agrees: {}", h.agrees),
            format!("pi2 = {pi2_text}"),
        ],
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum LazyMode {
    /// Free reduction; no relators, trivial subgroup.
    Free,
    /// Compare cosets in the abelianization (the group must be abelian).
    Abelian,
    /// Coset enumeration within the coset budget.
    Enumerate,
}

pub struct CoverArgs<'a> {
    pub subgroup: &'a [String],
    pub base: Option<u32>,
    pub lazy: Option<LazyMode>,
    pub radius: Option<usize>,
}

/// Total complex with one `# sheet` comment per sheet listing its vertices.
pub fn annotated_total(c: &CoveringComplex) -> String {
    let mut out = String::new();
    let mut sheets: std::collections::BTreeMap<usize, Vec<u32>> = Default::default();
    for (v, s) in &c.sheet {
        sheets.entry(*s).or_default().push(v.0);
    }
    for (s, vs) in sheets {
        let vs: Vec<String> = vs.iter().map(u32::to_string).collect();
        writeln!(out, "# sheet {s}: {}", vs.join(" ")).unwrap();
    }
    out.push_str(&write_complex(c.total_complex()));
    out
}

pub fn cover_cmd(input: &Input, args: &CoverArgs, b: Budgets) -> Result<(Outcome, CoveringComplex), CliError> {
    let k = parse_complex(&input.text)?.complex().clone();
    let v0 = basepoint(&k, args.base)?;
    let ep = edge_path_presentation(&k, v0)?;
    let words: Vec<Word> = args
        .subgroup
        .iter()
        .map(|w| ep.presentation.parse_word(w))
        .collect::<Result<_, _>>()?;
    let c = match args.lazy {
        None => finite_cover(&k, v0, &words, b.cosets)?,
        Some(mode) => {
            let rewriting = match mode {
                LazyMode::Free => Rewriting::Free,
                LazyMode::Abelian => Rewriting::Abelian,
                LazyMode::Enumerate => Rewriting::None { budget: b.cosets },
            };
            lazy_cover(&k, v0, &words, &rewriting, args.radius.unwrap_or(b.stages))?
        }
    };
    let check = verify_covering(&c);
    let total = c.total_complex();
    let euler_base = k.euler_characteristic();
    let euler_total = total.euler_characteristic();
    let mut text = Vec::new();
    let (sheets, mut results) = match c.sheets {
        Sheets::Finite(d) => {
            text.push(format!("sheets: {d}"));
            (json!(d), json!({}))
        }
        Sheets::Prefix { radius, cosets } => {
            text.push(format!("sheets: infinite; prefix of radius {radius} with {cosets} cosets"));
            let interior = c.interior();
            let h1 = homology(&interior, 1);
            text.push(format!("interior H_1 = {h1}"));
            (json!({ "radius": radius, "cosets": cosets }), json!({ "interior_h1": group_json(&h1) }))
        }
    };
    let mut verified = check.verified;
    results["sheets"] = sheets;
    results["euler_base"] = json!(euler_base);
    results["euler_total"] = json!(euler_total);
    results["h1_total"] = group_json(&homology(total, 1));
    if let Some(d) = c.sheet_count() {
        let image = verify_subgroup_image(&c, &words, b.cosets);
        verified &= image.verified;
        results["subgroup_image"] = json!(image.verified);
        results["euler_multiplicative"] = json!(euler_total == euler_base * d as i64);
        results["deck"] = match deck_count(&c) {
            Some(DeckCount::Normal(n)) => json!({ "normal": true, "transformations": n }),
            Some(DeckCount::NonNormal { symmetries }) => json!({ "normal": false, "transformations": symmetries }),
            None => Value::Null,
        };
    }
    results["verified"] = json!(verified);
    text.push(format!("euler: base {euler_base}, total {euler_total}"));
    text.push(format!("verified: {verified}"));
    Ok((
        Outcome {
            results,
            verdicts: json!({ "verified": verified }),
            text,
        },
        c,
    ))
}

fn witness_json(w: &Option<ldtopo::connect::Witness>, k: usize) -> (Value, String) {
    match w {
        Some(w) => (json!({ "witness": w.to_string() }), w.to_string()),
        None => (json!({ "none": k }), format!("none within {k} pieces")),
    }
}

pub fn connect_cmd(input: &Input, b: Budgets) -> Result<Outcome, CliError> {
    let s = Schema::parse(&input.text)?;
    let ld = ld_connected(&s)?;
    let op = op_connected(&s)?;
    let k = b.grammar_k;
    let ps = witness_search(&s, WitnessMode::Ps, k)?;
    let e = witness_search(&s, WitnessMode::E, k)?;
    let descriptions: Vec<String> = ld
        .components
        .iter()
        .map(|c| match c {
            ComponentDescription::Interval(i) => format!("union over n of {i}"),
            ComponentDescription::Periodic {
                segments,
                modulus,
                residue,
            } => format!("segments {segments:?}, copies i = {residue} mod {modulus}"),
        })
        .collect();
    let (ps_json, ps_text) = witness_json(&ps, k);
    let (e_json, e_text) = witness_json(&e, k);
    let mut results = json!({
        "connected": ld.connected,
        "components": ld.component_count,
        "component_descriptions": descriptions,
        "stable_from": ld.stable_from,
        "op": { "connected": op.connected, "lag": op.lag },
        "ps": ps_json,
        "e": e_json,
    });
    let mut text = vec![
        format!(
            "connected: {} ({} components)",
            ld.connected,
            ld.component_count.map_or("infinitely many".to_string(), |c| c.to_string())
        ),
        format!("op: {}", op.connected),
        format!("ps witness: {ps_text}"),
        format!("e witness: {e_text}"),
    ];
    if matches!(s, Schema::Line(_)) {
        let mut defs = Vec::new();
        for i in 0..ld.components.len() {
            match definability_of_union(&s, i)? {
                Definability::Definable(iv) => {
                    text.push(format!("component {i}: definable as {iv}"));
                    defs.push(json!({ "component": i, "definable": iv.to_string() }));
                }
                Definability::NotDefinable(obs) => {
                    let o: Vec<Value> = obs
                        .iter()
                        .map(|o| {
                            json!({
                                "side": match o.side { Side::Lower => "lower", Side::Upper => "upper" },
                                "endpoint": o.term.to_string(),
                                "candidate": o.candidate.to_string(),
                                "point_outside": o.point.to_string(),
                            })
                        })
                        .collect();
                    let first = &obs[0];
                    text.push(format!(
                        "component {i}: not definable; {} contains {} outside the union",
                        first.candidate, first.point
                    ));
                    defs.push(json!({ "component": i, "definable": null, "obstructions": o }));
                }
            }
        }
        results["definability"] = Value::Array(defs);
    }
    Ok(Outcome {
        results,
        verdicts: json!({
            "connected": ld.connected,
            "op_connected": op.connected,
            "ps_witness_found": ps.is_some(),
            "e_witness_found": e.is_some(),
        }),
        text,
    })
}

pub fn glue_cmd(input: &Input) -> Result<Outcome, CliError> {
    let spec = parse_glue_spec(&input.text)?;
    let g = glue_complexes(&spec)?;
    let k = &g.complex;
    let groups: Vec<FgAbGroup> = degrees(k, None).into_iter().map(|n| homology(k, n)).collect();
    let mut embedded = true;
    let mut parts = Vec::new();
    for (i, p) in spec.parts.iter().enumerate() {
        let image: std::collections::BTreeSet<_> = p.iter().map(|s| g.image_of(i, s)).collect();
        let ok = image.len() == p.len();
        embedded &= ok;
        parts.push(json!({ "simplices": p.len(), "image_simplices": image.len() }));
    }
    let mut text = vec![format!("euler characteristic: {}", k.euler_characteristic())];
    text.extend(groups.iter().enumerate().map(|(n, h)| format!("H_{n} = {h}")));
    text.push(format!("parts embed: {embedded}"));
    Ok(Outcome {
        results: json!({
            "vertices": k.count(0),
            "euler_characteristic": k.euler_characteristic(),
            "homology": groups.iter().map(group_json).collect::<Vec<_>>(),
            "parts": parts,
        }),
        verdicts: json!({ "parts_embedded": embedded }),
        text,
    })
}

pub fn whitehead_cmd(input: &Input, base: Option<u32>, b: Budgets) -> Result<Outcome, CliError> {
    let f = parse_map(&input.text)?;
    let v0 = basepoint(f.source(), base)?;
    let verdict = whitehead_check(&f, v0, b.cosets)?;
    let top = f.source().dim().unwrap_or(0).max(f.target().dim().unwrap_or(0));
    let mut induced = Vec::new();
    let mut text = Vec::new();
    for n in 0..=top {
        let m = induced_map(&f, n)?;
        let matrix: Vec<Vec<Value>> = (0..m.matrix.rows()).map(|i| m.matrix.row(i).iter().map(int_json).collect()).collect();
        text.push(format!("H_{n}: {} -> {} (isomorphism: {})", m.source, m.target, m.is_isomorphism()));
        induced.push(json!({
            "degree": n,
            "source": group_json(&m.source),
            "target": group_json(&m.target),
            "matrix": matrix,
            "isomorphism": m.is_isomorphism(),
        }));
    }
    let (name, degree) = match verdict {
        WhiteheadVerdict::EquivalenceCertified => ("equivalence-certified", None),
        WhiteheadVerdict::NotEquivalence { degree } => ("not-an-equivalence", Some(degree)),
        WhiteheadVerdict::Undetermined => ("undetermined", None),
    };
    text.push(format!("verdict: {name}"));
    Ok(Outcome {
        results: json!({ "induced": induced }),
        verdicts: json!({ "whitehead": name, "failing_degree": degree }),
        text,
    })
}
