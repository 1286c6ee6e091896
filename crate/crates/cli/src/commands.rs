use std::path::{Path, PathBuf};

use clap::Args;
use num_complex::Complex64;

use bitangent_core::bitangent::{
    count_real, polish, solve_all, Bitangent, BitangentSet, SolverConfig,
};
use bitangent_core::catalog::{
    entries, entry, lattice_report, specialize, verify_type, CatalogError, EdgeOutcome, TypeId,
    Verification, INVARIANCE_TOL,
};
use bitangent_core::equivariant::{
    compute_orbits, format_burnside, label_name, match_expected, restrict_action, term_names,
    to_burnside, MatchReport, OrbitDecomposition,
};
use bitangent_core::grp::{FiniteProjGroup, Subgroup};
use bitangent_core::projgeom::{ProjLine, TernaryQuartic};

use crate::config::Tuning;
use crate::error::CliError;
use crate::plot::{self, PlotInput, PlotLine, Window};
use crate::schema::*;
use crate::source::{parse_type, QuarticSource, Resolved};

/// How a command finished when it did not fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Done,
    Mismatch,
}

#[derive(Debug, Clone, Args)]
pub struct Output {
    /// Write the result here instead of standard output.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

/// Prints to standard output, ignoring a closed pipe.
fn print_line(text: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

impl Output {
    fn emit(&self, text: &str) -> Result<(), CliError> {
        match &self.out {
            Some(p) => write_file(p, text),
            None => {
                print_line(text);
                Ok(())
            }
        }
    }

    fn emit_json<T: serde::Serialize>(&self, doc: &T) -> Result<(), CliError> {
        let text = serde_json::to_string_pretty(doc).map_err(|e| CliError::math(e.to_string()))?;
        self.emit(&text)
    }
}

fn roman(id: Option<TypeId>) -> Option<String> {
    id.map(|t| t.roman().to_string())
}

fn require_type(r: &Resolved) -> Result<TypeId, CliError> {
    r.type_id
        .ok_or_else(|| CliError::Usage("this command needs --type".into()))
}

fn invariant_group(id: TypeId, f: &TernaryQuartic) -> Result<&'static FiniteProjGroup, CliError> {
    let e = entry(id);
    let (generator, distance) = e.invariance_defect(f);
    if distance > INVARIANCE_TOL {
        return Err(CatalogError::NotInvariant {
            generator,
            distance,
        }
        .into());
    }
    Ok(e.group().map_err(CatalogError::from)?)
}

fn decompose(group: &FiniteProjGroup, set: &BitangentSet) -> Result<OrbitDecomposition, CliError> {
    compute_orbits(group, set).map_err(|e| CatalogError::from(e).into())
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub source: QuarticSource,
    #[command(flatten)]
    pub tuning: Tuning,
    #[command(flatten)]
    pub output: Output,
}

pub fn solve(args: &SolveArgs) -> Result<Outcome, CliError> {
    let cfg = args.tuning.solver_config()?;
    let r = args.source.resolve()?;
    let set = solve_all(&r.quartic, &cfg)?;
    args.output
        .emit_json(&SolveDoc::new(roman(r.type_id), r.params, &set))?;
    Ok(Outcome::Done)
}

#[derive(Debug, Clone, Args)]
pub struct OrbitsArgs {
    #[command(flatten)]
    pub source: QuarticSource,
    /// Decompose the lines of an earlier `solve` document instead of
    /// solving again.
    #[arg(long = "from-json", value_name = "PATH", conflicts_with = "coeffs")]
    pub from_json: Option<PathBuf>,
    #[command(flatten)]
    pub tuning: Tuning,
    #[command(flatten)]
    pub output: Output,
}

/// Rebuilds a bitangent set from a `solve` document, re-polishing each
/// line against the stored quartic.
pub fn set_from_doc(doc: &SolveDoc, cfg: &SolverConfig) -> Result<BitangentSet, CliError> {
    let coeffs: [Complex64; 15] = doc
        .quartic
        .clone()
        .try_into()
        .map_err(|q: Vec<Complex64>| {
            CliError::Usage(format!("quartic has {} coefficients, expected 15", q.len()))
        })?;
    let source = TernaryQuartic::new(coeffs).map_err(|e| CliError::Usage(e.to_string()))?;
    let items = doc
        .bitangents
        .iter()
        .enumerate()
        .map(|(k, b)| {
            let line =
                ProjLine::new(b.line).map_err(|e| CliError::Usage(format!("line {k}: {e}")))?;
            polish(&source, &line, cfg)
                .map_err(|e| CliError::math(format!("line {k} does not polish: {e}")))
        })
        .collect::<Result<Vec<Bitangent>, CliError>>()?;
    if items.len() != 28 {
        return Err(CliError::math(format!(
            "document has {} lines, expected 28",
            items.len()
        )));
    }
    Ok(BitangentSet {
        items,
        source,
        diagnostics: doc.diagnostics.clone(),
    })
}

pub fn orbits(args: &OrbitsArgs) -> Result<Outcome, CliError> {
    let cfg = args.tuning.solver_config()?;
    let (id, params, set) = match &args.from_json {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?;
            let doc: SolveDoc = serde_json::from_str(&text)
                .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            let named = match (&args.source.type_id, &doc.type_id) {
                (Some(t), _) | (None, Some(t)) => t.clone(),
                (None, None) => {
                    return Err(CliError::Usage(
                        "the document has no type; pass --type".into(),
                    ))
                }
            };
            (
                parse_type(&named)?,
                doc.params.clone(),
                set_from_doc(&doc, &cfg)?,
            )
        }
        None => {
            let r = args.source.resolve()?;
            let id = require_type(&r)?;
            (id, r.params, solve_all(&r.quartic, &cfg)?)
        }
    };
    let group = invariant_group(id, &set.source)?;
    let d = decompose(group, &set)?;
    let report = match_expected(id.roman(), &to_burnside(group, &d), &entry(id).expected);
    let orbits = d
        .orbits
        .iter()
        .map(|o| OrbitDoc {
            members: o.members.clone(),
            representative: o.representative,
            size: o.size(),
            stabilizer_order: o.stabilizer.order(),
            label: o.label.to_string(),
            stab_class: o.stab_class,
            central: o.central,
            real_count: o.real_count,
        })
        .collect();
    args.output.emit_json(&OrbitsDoc {
        schema_version: SCHEMA_VERSION,
        type_id: id.roman().into(),
        params,
        group_order: group.order(),
        decomposition: report.computed.join(" + "),
        orbits,
    })?;
    Ok(Outcome::Done)
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub source: QuarticSource,
    #[command(flatten)]
    pub tuning: Tuning,
    #[command(flatten)]
    pub output: Output,
}

fn verify_doc(v: &Verification) -> VerifyDoc {
    VerifyDoc {
        schema_version: SCHEMA_VERSION,
        passed: v.passed(),
        params: v.params.clone(),
        real_count: v.real_count,
        expected_real: v.expected_real,
        report: v.report.clone(),
    }
}

pub fn verify(args: &VerifyArgs) -> Result<Outcome, CliError> {
    if args.source.coeffs.is_some() {
        return Err(CliError::Usage(
            "verify takes --type and optional --params".into(),
        ));
    }
    let cfg = args.tuning.solver_config()?;
    let r = args.source.resolve()?;
    let id = require_type(&r)?;
    let v = verify_type(id, (!r.figure).then_some(r.params.as_slice()), &cfg)?;
    args.output.emit_json(&verify_doc(&v))?;
    Ok(if v.passed() {
        Outcome::Done
    } else {
        Outcome::Mismatch
    })
}

#[derive(Debug, Clone, Args)]
pub struct VerifyAllArgs {
    #[command(flatten)]
    pub tuning: Tuning,
    /// Also write the full reports as JSON.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

/// The twelve figure-curve verifications, in type order.
pub fn verify_all_docs(cfg: &SolverConfig) -> Vec<VerifyDoc> {
    let results: Vec<Result<Verification, CatalogError>> = std::thread::scope(|s| {
        let handles: Vec<_> = TypeId::ALL
            .iter()
            .map(|&id| s.spawn(move || verify_type(id, None, cfg)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("verification thread panicked"))
            .collect()
    });
    TypeId::ALL
        .iter()
        .zip(results)
        .map(|(&id, r)| match r {
            Ok(v) => verify_doc(&v),
            Err(e) => {
                let expected = &entry(id).expected;
                VerifyDoc {
                    schema_version: SCHEMA_VERSION,
                    passed: false,
                    params: entry(id).figure.params.clone(),
                    real_count: 0,
                    expected_real: Some(entry(id).figure.real_count),
                    report: MatchReport {
                        type_id: id.roman().into(),
                        group_order: expected.group_order,
                        computed: Vec::new(),
                        expected: vec![expected.format()],
                        mismatches: vec![e.to_string()],
                    },
                }
            }
        })
        .collect()
}

pub fn verify_line(d: &VerifyDoc) -> String {
    let status = if d.passed { "PASS" } else { "FAIL" };
    let mut line = format!(
        "{status} {:<4} order {:>3}: {}",
        d.report.type_id,
        d.report.group_order,
        d.report.computed.join(" + ")
    );
    if !d.passed {
        line.push_str(" | ");
        line.push_str(&d.report.mismatches.join("; "));
    }
    line
}

pub fn verify_all(args: &VerifyAllArgs) -> Result<Outcome, CliError> {
    let cfg = args.tuning.solver_config()?;
    let docs = verify_all_docs(&cfg);
    for d in &docs {
        print_line(&verify_line(d));
    }
    let passed = docs.iter().all(|d| d.passed);
    if let Some(path) = &args.out {
        let doc = VerifyAllDoc {
            schema_version: SCHEMA_VERSION,
            passed,
            types: docs,
        };
        let text = serde_json::to_string_pretty(&doc).map_err(|e| CliError::math(e.to_string()))?;
        write_file(path, &text)?;
    }
    Ok(if passed {
        Outcome::Done
    } else {
        Outcome::Mismatch
    })
}

#[derive(Debug, Clone, Args)]
pub struct RestrictArgs {
    #[command(flatten)]
    pub source: QuarticSource,
    /// Restrict to every conjugacy class of subgroups of this order.
    #[arg(
        long = "subgroup-order",
        value_name = "N",
        conflicts_with = "generators"
    )]
    pub subgroup_order: Option<usize>,
    /// Restrict to the subgroup generated by these group elements (indices
    /// into the closure of the type's generators).
    #[arg(long, value_delimiter = ',', value_name = "I,J,...")]
    pub generators: Vec<usize>,
    #[command(flatten)]
    pub tuning: Tuning,
    #[command(flatten)]
    pub output: Output,
}

/// Decomposition of the restriction to `h`, with the catalog types whose
/// expected pattern it matches.
pub fn restriction_doc(
    group: &FiniteProjGroup,
    h: &Subgroup,
    set: &BitangentSet,
) -> Result<SubgroupDoc, CliError> {
    let (sub, d) = restrict_action(group, h, set).map_err(CatalogError::from)?;
    let b = to_burnside(&sub, &d);
    let reports: Vec<MatchReport> = entries()
        .iter()
        .filter(|e| e.group_order == h.order())
        .map(|e| match_expected(e.id.roman(), &b, &e.expected))
        .filter(MatchReport::passed)
        .collect();
    let label = group.iso_label(h).to_string();
    let decomposition = match reports.first() {
        Some(r) => r.computed.join(" + "),
        None => format_burnside(&b, &label, label_name),
    };
    Ok(SubgroupDoc {
        order: h.order(),
        label,
        members: h.members().to_vec(),
        decomposition,
        matches: reports.into_iter().map(|r| r.type_id).collect(),
    })
}

pub fn restrict(args: &RestrictArgs) -> Result<Outcome, CliError> {
    let cfg = args.tuning.solver_config()?;
    let r = args.source.resolve()?;
    let id = require_type(&r)?;
    let group = invariant_group(id, &r.quartic)?;
    let subgroups: Vec<Subgroup> = match (args.subgroup_order, args.generators.as_slice()) {
        (Some(n), _) => {
            let mut reps: Vec<Subgroup> = Vec::new();
            for h in group.subgroups_of_order(n) {
                if !reps.iter().any(|k| group.subgroups_conjugate(k, &h)) {
                    reps.push(h);
                }
            }
            if reps.is_empty() {
                return Err(CliError::Usage(format!(
                    "the group of type {id} has no subgroup of order {n}"
                )));
            }
            reps
        }
        (None, []) => {
            return Err(CliError::Usage(
                "give --subgroup-order or --generators".into(),
            ))
        }
        (None, gens) => {
            if let Some(bad) = gens.iter().find(|&&g| g >= group.order()) {
                return Err(CliError::Usage(format!(
                    "element index {bad} out of range (order {})",
                    group.order()
                )));
            }
            vec![group.generated_by(gens)]
        }
    };
    let set = solve_all(&r.quartic, &cfg)?;
    let docs = subgroups
        .iter()
        .map(|h| restriction_doc(group, h, &set))
        .collect::<Result<Vec<_>, _>>()?;
    args.output.emit_json(&RestrictDoc {
        schema_version: SCHEMA_VERSION,
        type_id: id.roman().into(),
        params: r.params,
        subgroups: docs,
    })?;
    Ok(Outcome::Done)
}

#[derive(Debug, Clone, Args)]
pub struct SpecializeArgs {
    /// Type whose family is searched.
    #[arg(long)]
    pub from: String,
    /// Type whose generators must preserve the specialized curve.
    #[arg(long)]
    pub to: String,
    #[command(flatten)]
    pub output: Output,
}

pub fn specialize_cmd(args: &SpecializeArgs) -> Result<Outcome, CliError> {
    let (from, to) = (parse_type(&args.from)?, parse_type(&args.to)?);
    let family = &entry(from).family;
    let result = specialize(family, &entry(to).generators)?;
    args.output.emit_json(&SpecializeDoc {
        schema_version: SCHEMA_VERSION,
        from: from.roman().into(),
        to: to.roman().into(),
        family_params: family.param_names.clone(),
        result,
    })?;
    Ok(Outcome::Done)
}

#[derive(Debug, Clone, Args)]
pub struct LatticeArgs {
    /// Also write the edges as JSON.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

pub fn lattice(args: &LatticeArgs) -> Result<Outcome, CliError> {
    let edges = lattice_report();
    for e in &edges {
        let outcome = match &e.outcome {
            EdgeOutcome::Confirmed => "confirmed".to_string(),
            EdgeOutcome::Failed(why) => format!("FAILED: {why}"),
            EdgeOutcome::NotChecked(why) => format!("not checked: {why}"),
        };
        let label = if e.label.is_empty() {
            String::new()
        } else {
            format!(" {}", e.label)
        };
        print_line(&format!(
            "{:>4} -> {:<4} {:?}{label}: {outcome}",
            e.from.roman(),
            e.to.roman(),
            e.kind
        ));
    }
    let failed = edges
        .iter()
        .any(|e| matches!(e.outcome, EdgeOutcome::Failed(_)));
    if let Some(path) = &args.out {
        let text = serde_json::to_string_pretty(&LatticeDoc {
            schema_version: SCHEMA_VERSION,
            edges,
        })
        .map_err(|e| CliError::math(e.to_string()))?;
        write_file(path, &text)?;
    }
    Ok(if failed {
        Outcome::Mismatch
    } else {
        Outcome::Done
    })
}

#[derive(Debug, Clone, Args)]
pub struct PlotArgs {
    #[command(flatten)]
    pub source: QuarticSource,
    /// Affine window in the chart z = 1; by default a square around the
    /// real tangency points.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        value_name = "XMIN,XMAX,YMIN,YMAX"
    )]
    pub window: Option<Vec<f64>>,
    /// Grid cells per side for contouring.
    #[arg(long, default_value_t = 512, value_parser = clap::value_parser!(u32).range(2..=4096))]
    pub grid: u32,
    #[command(flatten)]
    pub tuning: Tuning,
    #[command(flatten)]
    pub output: Output,
}

fn real_affine(p: &[Complex64; 3]) -> Option<[f64; 2]> {
    if p[2].norm() < 1e-9 {
        return None;
    }
    let (x, y) = (p[0] / p[2], p[1] / p[2]);
    (x.im.abs() <= 1e-6 * x.norm().max(1.0) && y.im.abs() <= 1e-6 * y.norm().max(1.0))
        .then_some([x.re, y.re])
}

/// Point of `a x + b y + c = 0` nearest the origin.
fn foot_of_origin([a, b, c]: [f64; 3]) -> Option<[f64; 2]> {
    let n = a * a + b * b;
    (n > 1e-18).then(|| [-a * c / n, -b * c / n])
}

fn title(r: &Resolved) -> String {
    match r.type_id {
        Some(id) => {
            let names = &entry(id).param_names;
            let params: Vec<String> = names
                .iter()
                .zip(&r.params)
                .map(|(n, v)| format!("{n}={}", fmt_complex(*v)))
                .collect();
            format!("Type {id} {}", params.join(" "))
                .trim_end()
                .to_string()
        }
        None => "quartic".to_string(),
    }
}

fn fmt_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}

/// Real bitangents with one class per orbit that contains real lines,
/// ordered by stabilizer class and then representative.
fn classify(r: &Resolved, set: &BitangentSet) -> Result<(Vec<PlotLine>, Vec<String>), CliError> {
    let real: Vec<usize> = (0..set.len()).filter(|&k| set.items[k].is_real).collect();
    let Some(id) = r.type_id else {
        let lines = real
            .iter()
            .map(|&k| PlotLine {
                coords: plot::real_coords(&set.items[k].line),
                class: 0,
            })
            .collect();
        return Ok((lines, vec![format!("{} real bitangents", real.len())]));
    };
    let group = invariant_group(id, &r.quartic)?;
    let d = decompose(group, set)?;
    let mut orbits: Vec<_> = d.orbits.iter().filter(|o| o.real_count > 0).collect();
    orbits.sort_by_key(|o| (o.stab_class, o.representative));
    let b = to_burnside(group, &d);
    let names = term_names(&b, &entry(id).expected);
    let name_of = |c: usize| {
        b.terms
            .iter()
            .position(|t| t.stab_class == c)
            .map_or_else(String::new, |j| names[j].clone())
    };
    let group_name = entry(id).group_name;
    let legend = orbits
        .iter()
        .map(|o| {
            format!(
                "[{group_name}/{}] orbit of {}, {} real",
                name_of(o.stab_class),
                o.size(),
                o.real_count
            )
        })
        .collect();
    let lines = real
        .iter()
        .map(|&k| {
            let class = orbits
                .iter()
                .position(|o| o.members.contains(&k))
                .expect("every line lies in an orbit");
            PlotLine {
                coords: plot::real_coords(&set.items[k].line),
                class,
            }
        })
        .collect();
    Ok((lines, legend))
}

pub fn plot(args: &PlotArgs) -> Result<Outcome, CliError> {
    let cfg = args.tuning.solver_config()?;
    let window = args
        .window
        .as_deref()
        .map(Window::from_values)
        .transpose()?;
    let r = args.source.resolve()?;
    let set = solve_all(&r.quartic, &cfg)?;
    let window = window.unwrap_or_else(|| {
        let pts: Vec<[f64; 2]> = set
            .items
            .iter()
            .filter(|b| b.is_real)
            .flat_map(|b| {
                let tangency = b
                    .tangency_points
                    .iter()
                    .filter_map(|p| real_affine(p.coords()));
                tangency.chain(foot_of_origin(plot::real_coords(&b.line)))
            })
            .collect();
        Window::around(&pts)
    });
    let (lines, legend) = classify(&r, &set)?;
    let input = PlotInput {
        quartic: &r.quartic,
        lines,
        legend,
        window,
        grid: args.grid as usize,
        title: title(&r),
    };
    let rendered = plot::render(&input);
    args.output.emit(&rendered.svg)?;
    if !rendered.curve_found {
        return Err(CliError::Math {
            message: "the curve has no real points in the window".into(),
            details: Some(serde_json::json!({ "realBitangents": count_real(&set) })),
        });
    }
    Ok(Outcome::Done)
}

#[derive(Debug, Clone, Args)]
pub struct CatalogArgs {
    /// Show one type in detail.
    #[arg(long = "type", value_name = "TYPE")]
    pub type_id: Option<String>,
}

pub fn catalog(args: &CatalogArgs) -> Result<Outcome, CliError> {
    let Some(t) = &args.type_id else {
        for e in entries() {
            let params = if e.param_names.is_empty() {
                "-".to_string()
            } else {
                e.param_names.join(",")
            };
            print_line(&format!(
                "{:<4} {:<10} order {:>3}  {:<9} params {params}",
                e.id.roman(),
                e.group_name,
                e.group_order,
                e.gap_id
            ));
        }
        return Ok(Outcome::Done);
    };
    let e = entry(parse_type(t)?);
    let mut lines = vec![
        format!("type        {}", e.id),
        format!(
            "group       {} (order {}, {})",
            e.group_name, e.group_order, e.gap_id
        ),
        format!(
            "parameters  {}",
            if e.param_names.is_empty() {
                "none".into()
            } else {
                e.param_names.join(", ")
            }
        ),
        format!("generators  {}", e.generators.len()),
    ];
    for x in &e.exclusions {
        match x.promoted {
            Some(p) => lines.push(format!("excluded    {} (type {p})", x.rule)),
            None => lines.push(format!("excluded    {}", x.rule)),
        }
    }
    lines.push(format!("expected    {}", e.expected.format()));
    let params: Vec<String> = e.figure.params.iter().map(|z| fmt_complex(*z)).collect();
    lines.push(format!(
        "figure      params [{}], {} real bitangents",
        params.join(", "),
        e.figure.real_count
    ));
    print_line(&lines.join("\n"));
    Ok(Outcome::Done)
}
