use std::path::Path;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use knotcalc::classical::{conway_a2, kauffman_bracket, linking_number, v2, v3, GaussDiagram};
use knotcalc::diagram::{
    braid_closure, pretzel, pretzel_vertical, slice_to_pd, vertex_sum, BraidWord, SliceWord, ThetaTangle, FORMAT_VERSION,
};
use knotcalc::moves::{band_sum, ck_model, crossing_change, MoveSite};
use knotcalc::quantum::{colored_invariant_with, compare_with, fundamental_invariant, AlgebraSpec, ColorSpec, ColoredRep};
use knotcalc::ring::{equal_up_to_unit_and_inversion, paper_polynomial, LaurentPoly};
use knotcalc::surfaces::{blackboard_surface, boundary_diagram, canonical_surface, modify_surface, seifert_pairing, RibbonSurface};

use crate::cache;
use crate::error::{CliError, CliResult};
use crate::output::{report, write_document, RunConfig};
use crate::{Command, GenKind, InvariantName, MoveKind, QuantumArgs, ReproTarget, SurfaceAction};

const CONVENTIONS: &str = include_str!("conventions.txt");

pub fn run(command: Command, config: &RunConfig) -> CliResult<()> {
    if config.max_cut_width == 0 || config.max_states == 0 || config.max_oracle_crossings == 0 {
        return Err(CliError::Input("resource caps must be positive".into()));
    }
    match command {
        Command::Gen { kind, output } => generate(kind, output.as_deref(), config),
        Command::Invariant { file, name, components, quantum } => invariant(&file, name, components.as_deref(), &quantum, config),
        Command::Compare { first, second, quantum } => compare(&first, &second, &quantum, config),
        Command::Move { kind, file, index, cut, strands, mirror, order, output } => {
            apply_move(kind, &file, index, cut, strands.as_deref(), mirror, order, output.as_deref())
        }
        Command::Surface { file, action, canonical, twists, half, output } => {
            surface(&file, action, canonical, twists.as_deref(), half.as_deref(), output.as_deref(), config)
        }
        Command::Repro { target: ReproTarget::Theorem18 } => theorem_1_8(config),
    }
}

/// Reads a JSON file after checking its format version.
fn read_checked(path: &Path) -> CliResult<String> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    match v.get("format").and_then(Value::as_u64) {
        Some(f) if f == u64::from(FORMAT_VERSION) => Ok(text),
        Some(f) => Err(CliError::Input(format!("{}: unsupported format version {f}", path.display()))),
        None => Err(CliError::Input(format!("{}: missing format version", path.display()))),
    }
}

fn load_slice(path: &Path) -> CliResult<SliceWord> {
    Ok(SliceWord::from_json(&read_checked(path)?)?)
}

fn load_theta(path: &Path) -> CliResult<ThetaTangle> {
    Ok(ThetaTangle::from_json(&read_checked(path)?)?)
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> CliResult<Vec<T>> {
    text.split(',')
        .map(|t| t.trim().parse::<T>().map_err(|_| CliError::Input(format!("bad {what} entry {t:?} in {text:?}"))))
        .collect()
}

fn parse_triple<T: std::str::FromStr + Copy>(text: Option<&str>, what: &str, zero: T) -> CliResult<[T; 3]> {
    match text {
        None => Ok([zero; 3]),
        Some(t) => {
            let v = parse_list::<T>(t, what)?;
            v.try_into().map_err(|_| CliError::Input(format!("{what} needs exactly three entries")))
        }
    }
}

fn generate(kind: GenKind, output: Option<&Path>, config: &RunConfig) -> CliResult<()> {
    let text = match kind {
        GenKind::Pretzel { params, vertical } => {
            if vertical {
                pretzel_vertical(&params).to_json()
            } else {
                pretzel(&params).to_json()
            }
        }
        GenKind::Braid { word, strands } => braid_closure(&BraidWord::parse_with_strands(&word, strands)?).to_json(),
        GenKind::ThetaTrivial => ThetaTangle::trivial().to_json(),
        GenKind::ThetaBraid { word } => ThetaTangle::from_braid(&BraidWord::parse_with_strands(&word, Some(3))?)?.to_json(),
        GenKind::RandomTheta { crossings } => {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            let gens = (0..crossings).map(|_| rng.gen_range(1..=2) * if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
            ThetaTangle::from_braid(&BraidWord::new(3, gens)?)?.to_json()
        }
        GenKind::VertexSum { first, second } => vertex_sum(&load_theta(&first)?, &load_theta(&second)?)?.to_json(),
    };
    write_document(output, &text)
}

fn color_of(q: &QuantumArgs) -> CliResult<(AlgebraSpec, ColorSpec)> {
    let alg = AlgebraSpec::new(q.algebra)?;
    let color = match &q.tableau {
        Some(t) => {
            let rows: CliResult<Vec<Vec<usize>>> = t.split('/').map(|r| parse_list(r, "tableau")).collect();
            let c = ColorSpec::with_tableau(rows?)?;
            if c.partition() != parse_list::<usize>(&q.color, "partition")? {
                return Err(CliError::Input(format!("tableau {t:?} does not have shape {}", q.color)));
            }
            c
        }
        None => ColorSpec::parse(&q.color)?,
    };
    Ok((alg, color))
}

fn color_value(alg: AlgebraSpec, color: &ColorSpec) -> Value {
    json!({ "algebra": alg.n(), "partition": color.partition(), "tableau": color.tableau() })
}

fn check_oracle_size(s: &SliceWord, config: &RunConfig) -> CliResult<()> {
    if s.crossing_count() > config.max_oracle_crossings {
        return Err(CliError::Resource(format!(
            "{} crossings exceed --max-oracle-crossings {}",
            s.crossing_count(),
            config.max_oracle_crossings
        )));
    }
    Ok(())
}

fn component_by_label(labels: &[String], name: &str) -> CliResult<usize> {
    let mut hits = labels.iter().enumerate().filter(|(_, l)| l.as_str() == name);
    match (hits.next(), hits.next()) {
        (Some((i, _)), None) => Ok(i),
        (None, _) => Err(CliError::Input(format!("no component labeled {name:?} among {labels:?}"))),
        _ => Err(CliError::Input(format!("label {name:?} is ambiguous"))),
    }
}

fn invariant(file: &Path, name: InvariantName, components: Option<&str>, q: &QuantumArgs, config: &RunConfig) -> CliResult<()> {
    let s = load_slice(file)?;
    let result = match name {
        InvariantName::Lk => {
            let d = slice_to_pd(&s)?;
            let (i, j) = match components {
                Some(c) => {
                    let names: Vec<&str> = c.split(',').map(str::trim).collect();
                    if names.len() != 2 {
                        return Err(CliError::Input("--components needs two labels".into()));
                    }
                    (component_by_label(d.labels(), names[0])?, component_by_label(d.labels(), names[1])?)
                }
                None if d.n_components() == 2 => (0, 1),
                None => return Err(CliError::Input("--components is required for links with more than two components".into())),
            };
            json!({ "lk": linking_number(&d, i, j)?, "components": [d.labels()[i], d.labels()[j]] })
        }
        InvariantName::V2 | InvariantName::V3 => {
            if s.n_components() != 1 {
                return Err(CliError::Input(format!("{:?} needs a knot, got {} components", name, s.n_components())));
            }
            let g = GaussDiagram::from_slice(&s)?;
            if name == InvariantName::V2 {
                json!({ "v2": v2(&g) })
            } else {
                json!({ "v3": v3(&g) })
            }
        }
        InvariantName::Bracket => {
            check_oracle_size(&s, config)?;
            json!({ "normalized_bracket": kauffman_bracket(&s)?.format_with("A") })
        }
        InvariantName::Conway => {
            check_oracle_size(&s, config)?;
            json!({ "conway_a2": conway_a2(&s)? })
        }
        InvariantName::Quantum => {
            let (alg, color) = color_of(q)?;
            let key = cache::key(&["invariant", &s.to_json(), &color_value(alg, &color).to_string()]);
            let text = cache::memo(&key, || -> CliResult<String> {
                let r = if color.boxes() == 1 {
                    fundamental_invariant(&s, alg, &config.limits())?
                } else {
                    colored_invariant_with(&s, &ColoredRep::new(alg, color.clone())?, &config.limits())?
                };
                Ok(r.to_json())
            })?;
            json!({ "color": color_value(alg, &color), "report": parse_value(&text)? })
        }
    };
    report(config, "invariant", result);
    Ok(())
}

fn parse_value(text: &str) -> CliResult<Value> {
    serde_json::from_str(text).map_err(|e| CliError::Input(format!("corrupt cached report: {e}")))
}

fn comparison_text(k1: &SliceWord, k2: &SliceWord, alg: AlgebraSpec, color: &ColorSpec, config: &RunConfig) -> CliResult<String> {
    let key = cache::key(&["compare", &k1.to_json(), &k2.to_json(), &color_value(alg, color).to_string()]);
    cache::memo(&key, || -> CliResult<String> {
        let rep = ColoredRep::new(alg, color.clone())?;
        Ok(compare_with(k1, k2, &rep, &config.limits())?.to_json())
    })
}

fn compare(first: &Path, second: &Path, q: &QuantumArgs, config: &RunConfig) -> CliResult<()> {
    let (k1, k2) = (load_slice(first)?, load_slice(second)?);
    let (alg, color) = color_of(q)?;
    let text = comparison_text(&k1, &k2, alg, &color, config)?;
    report(config, "compare", json!({ "color": color_value(alg, &color), "comparison": parse_value(&text)? }));
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn apply_move(
    kind: MoveKind,
    file: &Path,
    index: Option<usize>,
    cut: Option<usize>,
    strands: Option<&str>,
    mirror: bool,
    order: Option<usize>,
    output: Option<&Path>,
) -> CliResult<()> {
    let s = load_slice(file)?;
    let out = if kind == MoveKind::CrossingChange {
        let index = index.ok_or_else(|| CliError::Input("crossing-change needs --index".into()))?;
        crossing_change(&s, index)?
    } else {
        let k = match kind {
            MoveKind::Delta => 2,
            MoveKind::ClaspPass => 3,
            _ => order.ok_or_else(|| CliError::Input("ck needs --order".into()))?,
        };
        let cut = cut.ok_or_else(|| CliError::Input("model moves need --cut".into()))?;
        let strands = parse_list(strands.ok_or_else(|| CliError::Input("model moves need --strands".into()))?, "strand")?;
        let site = MoveSite { mirror, ..MoveSite::new(cut, strands) };
        band_sum(&s, &ck_model(k)?, &site)?
    };
    write_document(output, &out.to_json())
}

fn load_surface(file: &Path, canonical: bool) -> CliResult<RibbonSurface> {
    let text = read_checked(file)?;
    let v: Value = serde_json::from_str(&text).expect("checked above");
    if v.get("core").is_some() {
        if canonical {
            return Err(CliError::Input("--canonical applies to theta-curve files, not surfaces".into()));
        }
        return Ok(RibbonSurface::from_json(&text)?);
    }
    let t = ThetaTangle::from_json(&text)?;
    Ok(if canonical { canonical_surface(&t)? } else { blackboard_surface(&t) })
}

fn surface(
    file: &Path,
    action: SurfaceAction,
    canonical: bool,
    twists: Option<&str>,
    half: Option<&str>,
    output: Option<&Path>,
    config: &RunConfig,
) -> CliResult<()> {
    let x = parse_triple::<i64>(twists, "twist", 0)?;
    let y = parse_triple::<i8>(half, "half-twist", 0)?;
    let base = match action {
        SurfaceAction::Canonical => load_surface(file, true)?,
        _ => load_surface(file, canonical)?,
    };
    let s = modify_surface(&base, x, y)?;
    match action {
        SurfaceAction::Pairing => {
            let m = seifert_pairing(&s)?;
            let result = json!({
                "cycles": m.cycles,
                "entries": m.entries,
                "twists": s.twists(),
                "half_twists": s.half_twists(),
            });
            report(config, "surface-pairing", result);
            Ok(())
        }
        SurfaceAction::Canonical => write_document(output, &s.to_json()),
        SurfaceAction::Boundary => write_document(output, &boundary_diagram(&s)?.to_json()),
    }
}

fn pretzel_name(params: &[i64]) -> String {
    format!("P({})", params.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
}

fn theorem_1_8(config: &RunConfig) -> CliResult<()> {
    let start = Instant::now();
    let (kg_params, kh_params) = ([3, 3, -3, -2], [3, -3, 3, -2]);
    let (kg, kh) = (pretzel(&kg_params), pretzel(&kh_params));
    let alg = AlgebraSpec::new(4)?;
    let color = ColorSpec::new(vec![2, 1])?;
    let text = comparison_text(&kg, &kh, alg, &color, config)?;
    let comparison = parse_value(&text)?;
    let field = |k: &str| comparison[k].as_str().map(str::to_string).ok_or_else(|| CliError::Input(format!("report lacks {k}")));
    let normalized = LaurentPoly::parse(&field("normalized_difference")?)?;
    let matches = equal_up_to_unit_and_inversion(&normalized, &paper_polynomial());
    let vanish = field("vanish_order")?;
    let result = json!({
        "first": pretzel_name(&kg_params),
        "second": pretzel_name(&kh_params),
        "color": color_value(alg, &color),
        "comparison": comparison,
        "published_polynomial": paper_polynomial().to_text(),
        "matches_published_up_to_unit_and_inversion": matches,
        "vanish_order": vanish,
        "reproduced": matches && vanish == "11",
        "wall_clock_seconds": (start.elapsed().as_secs_f64() * 10.0).round() / 10.0,
        "conventions_sha256": cache::hex(&<sha2::Sha256 as sha2::Digest>::digest(CONVENTIONS.as_bytes())),
    });
    report(config, "repro-theorem-1.8", result);
    if matches && vanish == "11" {
        Ok(())
    } else {
        Err(CliError::NotReproduced("the computed difference does not match the published polynomial".into()))
    }
}
