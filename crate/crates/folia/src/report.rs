//! Analysis dispatch and deterministic report emission.
//!
//! JSON output is byte-identical across runs for identical inputs: record
//! order follows input order, maps are sorted, every number is an exact
//! rational or polynomial string, and the timing field is zeroed in JSON
//! (wall-clock timings appear only in the text rendering).

use crate::error::{FoliaError, Result};
use crate::firstintegral::find_first_integrals;
use crate::foliation::{close_under_brackets, contact_order, ContactOrderResult, FoliationSpec, Site};
use crate::invariant::{nf_profile, EvalPoint};
use crate::parse::FoliationFile;
use serde::Serialize;
use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    ContactOrder,
    Invariant,
    Profile,
    Extactic,
    FirstIntegral,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::ContactOrder => "contact-order",
            Command::Invariant => "invariant",
            Command::Profile => "profile",
            Command::Extactic => "extactic",
            Command::FirstIntegral => "first-integral",
        }
    }
}

/// Options assembled from file defaults and CLI flags.
#[derive(Debug, Clone)]
pub struct AnalysisOptions {
    pub max_degree: u32,
    pub word_cap: usize,
    pub span_cap: usize,
    pub dim_cap: usize,
    pub degree: u32,
    /// Selected point names; empty means all points in the file.
    pub points: Vec<String>,
    pub candidate: Option<String>,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            max_degree: 4,
            word_cap: crate::foliation::DEFAULT_WORD_CAP,
            span_cap: crate::foliation::DEFAULT_SPAN_CAP,
            dim_cap: crate::foliation::DEFAULT_DIM_CAP,
            degree: 1,
            points: vec![],
            candidate: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub version: String,
    pub analyses: Vec<AnalysisRecord>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisRecord {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub result: AnalysisResult,
    pub warnings: Vec<String>,
    pub micros: u64,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum AnalysisResult {
    ContactOrder {
        candidate: String,
        point: String,
        order: ContactOrderJson,
    },
    Invariant {
        point: String,
        coords: String,
        max_degree: u32,
        dims_by_degree: Vec<i64>,
        dimension: i64,
        stabilized: bool,
        generators: Vec<String>,
    },
    Profile {
        rows: Vec<ProfileRowJson>,
    },
    Extactic {
        field: String,
        degree: u32,
        polynomial: String,
        vanishes: bool,
    },
    FirstIntegral {
        field: String,
        degree: u32,
        pairs: Vec<DarbouxPairJson>,
        integral: Option<FirstIntegralJson>,
        verified: bool,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct ContactOrderJson {
    pub variant: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProfileRowJson {
    pub point: String,
    pub coords: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dimension: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stabilized: Option<bool>,
    pub dims_by_degree: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DarbouxPairJson {
    pub polynomial: String,
    pub cofactor: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct FirstIntegralJson {
    pub numerator: String,
    pub denominator: String,
}

fn contact_json(r: &ContactOrderResult) -> ContactOrderJson {
    match r {
        ContactOrderResult::Finite { witness } => ContactOrderJson {
            variant: "finite".into(),
            order: Some(witness.len() as u64),
            witness: Some(witness.0.clone()),
            certificate: None,
            bound: None,
        },
        ContactOrderResult::Infinite { certificate } => ContactOrderJson {
            variant: "infinite".into(),
            order: None,
            witness: None,
            certificate: Some(certificate.iter().map(|p| p.render()).collect()),
            bound: None,
        },
        ContactOrderResult::AtLeast { bound } => ContactOrderJson {
            variant: "at_least".into(),
            order: None,
            witness: None,
            certificate: None,
            bound: Some(*bound as u64),
        },
    }
}

fn selected_points<'a>(
    file: &'a FoliationFile,
    options: &AnalysisOptions,
) -> Result<Vec<(&'a String, &'a EvalPoint)>> {
    if options.points.is_empty() {
        return Ok(file.points.iter().map(|(n, p)| (n, p)).collect());
    }
    let mut out = Vec::new();
    for name in &options.points {
        let Some(found) = file.points.iter().find(|(n, _)| n == name) else {
            return Err(FoliaError::UnknownName {
                name: name.clone(),
                kind: "point".into(),
            });
        };
        out.push((&found.0, &found.1));
    }
    Ok(out)
}

/// Build the bracket-closed foliation from the file's fields.
fn build_spec(file: &FoliationFile, warnings: &mut Vec<String>) -> Result<FoliationSpec> {
    if file.fields.is_empty() {
        return Err(FoliaError::EmptyInput {
            what: "field declarations".into(),
        });
    }
    let spec = close_under_brackets(
        file.fields.clone(),
        file.options.closure_degree_cap,
        file.options.closure_size_cap,
    )?;
    if !spec.bracket_closed {
        warnings.push(format!(
            "bracket closure not certified: generator cap {} reached",
            file.options.closure_size_cap
        ));
    } else if spec.len() > file.fields.len() {
        warnings.push(format!(
            "bracket closure adjoined {} generator(s)",
            spec.len() - file.fields.len()
        ));
    }
    Ok(spec)
}

/// Run one command against a parsed file and collect a report. Cap
/// exhaustion becomes warnings, never a panic; per-point failures inside
/// `profile` stay in their row.
pub fn run_analysis(
    file: &FoliationFile,
    command: Command,
    options: &AnalysisOptions,
) -> Result<Report> {
    let mut warnings = Vec::new();
    let spec = build_spec(file, &mut warnings)?;
    let mut analyses = Vec::new();
    let mut base_inputs: BTreeMap<String, String> = BTreeMap::new();
    base_inputs.insert("vars".into(), file.ctx.vars().join(" "));
    if file.ctx.nparams() > 0 {
        base_inputs.insert("params".into(), file.ctx.params().join(" "));
    }
    base_inputs.insert(
        "fields".into(),
        spec.names().to_vec().join(", "),
    );

    match command {
        Command::ContactOrder => {
            let Some(cand_name) = &options.candidate else {
                return Err(FoliaError::InvalidOption {
                    message: "contact-order requires --candidate".into(),
                });
            };
            let Some(candidate) = file.candidate(cand_name) else {
                return Err(FoliaError::UnknownName {
                    name: cand_name.clone(),
                    kind: "candidate".into(),
                });
            };
            for (pname, point) in selected_points(file, options)? {
                let start = Instant::now();
                let mut inputs = base_inputs.clone();
                inputs.insert("candidate".into(), candidate.render());
                inputs.insert("point".into(), point.render());
                inputs.insert("word_cap".into(), options.word_cap.to_string());
                let result = contact_order(
                    candidate,
                    &spec,
                    &Site::Point(point.coords().to_vec()),
                    options.word_cap,
                    options.span_cap,
                )?;
                let mut record_warnings = Vec::new();
                if matches!(result, ContactOrderResult::AtLeast { .. }) {
                    record_warnings
                        .push(format!("word cap {} reached without a decision", options.word_cap));
                }
                analyses.push(AnalysisRecord {
                    command: command.name().into(),
                    inputs,
                    result: AnalysisResult::ContactOrder {
                        candidate: cand_name.clone(),
                        point: pname.clone(),
                        order: contact_json(&result),
                    },
                    warnings: record_warnings,
                    micros: start.elapsed().as_micros() as u64,
                });
            }
        }
        Command::Invariant => {
            for (pname, point) in selected_points(file, options)? {
                let start = Instant::now();
                let mut inputs = base_inputs.clone();
                inputs.insert("point".into(), point.render());
                inputs.insert("max_degree".into(), options.max_degree.to_string());
                let est = crate::invariant::invariant_variety_estimate(
                    point,
                    &spec,
                    options.max_degree,
                )?;
                let mut record_warnings = Vec::new();
                if !est.stabilized {
                    record_warnings.push(format!(
                        "estimate not stabilized at max degree {}",
                        options.max_degree
                    ));
                }
                analyses.push(AnalysisRecord {
                    command: command.name().into(),
                    inputs,
                    result: AnalysisResult::Invariant {
                        point: pname.clone(),
                        coords: point.render(),
                        max_degree: options.max_degree,
                        dims_by_degree: est.dims_by_degree.clone(),
                        dimension: est.dimension,
                        stabilized: est.stabilized,
                        generators: est.kernel.iter().map(|p| p.render()).collect(),
                    },
                    warnings: record_warnings,
                    micros: start.elapsed().as_micros() as u64,
                });
            }
        }
        Command::Profile => {
            let start = Instant::now();
            let selected = selected_points(file, options)?;
            let points: Vec<EvalPoint> = selected.iter().map(|(_, p)| (*p).clone()).collect();
            let names: Vec<String> = selected.iter().map(|(n, _)| (*n).clone()).collect();
            let mut inputs = base_inputs.clone();
            inputs.insert("points".into(), names.join(", "));
            inputs.insert("max_degree".into(), options.max_degree.to_string());
            let rows = nf_profile(&points, &spec, options.max_degree);
            let mut record_warnings = Vec::new();
            let rows_json: Vec<ProfileRowJson> = rows
                .iter()
                .zip(&names)
                .map(|(row, name)| match &row.estimate {
                    Some(est) => {
                        if !est.stabilized {
                            record_warnings.push(format!(
                                "point {name}: estimate not stabilized at max degree {}",
                                options.max_degree
                            ));
                        }
                        ProfileRowJson {
                            point: name.clone(),
                            coords: row.point.render(),
                            dimension: Some(est.dimension),
                            stabilized: Some(est.stabilized),
                            dims_by_degree: est.dims_by_degree.clone(),
                            error: None,
                        }
                    }
                    None => ProfileRowJson {
                        point: name.clone(),
                        coords: row.point.render(),
                        dimension: None,
                        stabilized: None,
                        dims_by_degree: vec![],
                        error: row.error.clone(),
                    },
                })
                .collect();
            analyses.push(AnalysisRecord {
                command: command.name().into(),
                inputs,
                result: AnalysisResult::Profile { rows: rows_json },
                warnings: record_warnings,
                micros: start.elapsed().as_micros() as u64,
            });
        }
        Command::Extactic => {
            for (fname, d) in &file.fields {
                let start = Instant::now();
                let mut inputs = base_inputs.clone();
                inputs.insert("field".into(), d.render());
                inputs.insert("degree".into(), options.degree.to_string());
                let e = crate::firstintegral::extactic_polynomial(d, options.degree)?;
                analyses.push(AnalysisRecord {
                    command: command.name().into(),
                    inputs,
                    result: AnalysisResult::Extactic {
                        field: fname.clone(),
                        degree: options.degree,
                        polynomial: e.render(),
                        vanishes: e.is_zero(),
                    },
                    warnings: vec![],
                    micros: start.elapsed().as_micros() as u64,
                });
            }
        }
        Command::FirstIntegral => {
            let start = Instant::now();
            let outcomes = find_first_integrals(&spec, options.degree)?;
            for outcome in outcomes {
                let mut record_warnings = Vec::new();
                if !outcome.search.degree_preserving {
                    record_warnings.push(format!(
                        "generator {} does not preserve degree {}; search skipped",
                        outcome.generator, options.degree
                    ));
                }
                if outcome.search.nonrational_spectrum {
                    record_warnings.push("non-rational spectrum present".into());
                }
                let mut inputs = base_inputs.clone();
                inputs.insert("degree".into(), options.degree.to_string());
                analyses.push(AnalysisRecord {
                    command: command.name().into(),
                    inputs,
                    result: AnalysisResult::FirstIntegral {
                        field: outcome.generator.clone(),
                        degree: options.degree,
                        pairs: outcome
                            .search
                            .pairs
                            .iter()
                            .map(|p| DarbouxPairJson {
                                polynomial: p.f.render(),
                                cofactor: p.cofactor.render(),
                            })
                            .collect(),
                        integral: outcome.integral.as_ref().map(|fi| FirstIntegralJson {
                            numerator: fi.numerator.render(),
                            denominator: fi.denominator.render(),
                        }),
                        verified: outcome.verified,
                    },
                    warnings: record_warnings,
                    micros: start.elapsed().as_micros() as u64,
                });
            }
        }
    }

    Ok(Report {
        version: "1".into(),
        analyses,
        warnings,
    })
}

impl Report {
    pub fn empty() -> Self {
        Self {
            version: "1".into(),
            analyses: vec![],
            warnings: vec![],
        }
    }

    /// Deterministic JSON: the timing field is zeroed so identical inputs
    /// give byte-identical output.
    pub fn to_json(&self) -> String {
        let mut clone = self.clone();
        for a in &mut clone.analyses {
            a.micros = 0;
        }
        serde_json::to_string(&clone).expect("report serialization cannot fail")
    }

    /// Human-readable rendering with aligned tables.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for record in &self.analyses {
            out.push_str(&format!("== {} ==\n", record.command));
            match &record.result {
                AnalysisResult::ContactOrder {
                    candidate,
                    point,
                    order,
                } => {
                    out.push_str(&format!("candidate: {candidate}\npoint:     {point}\n"));
                    match order.variant.as_str() {
                        "finite" => {
                            out.push_str(&format!(
                                "order:     {} (witness word {:?})\n",
                                order.order.unwrap(),
                                order.witness.as_ref().unwrap()
                            ));
                        }
                        "infinite" => {
                            out.push_str("order:     infinite\n");
                            out.push_str(&format!(
                                "certificate ({} polynomials):\n",
                                order.certificate.as_ref().map(|c| c.len()).unwrap_or(0)
                            ));
                            for p in order.certificate.iter().flatten() {
                                out.push_str(&format!("  {p}\n"));
                            }
                        }
                        _ => {
                            out.push_str(&format!(
                                "order:     at least {}\n",
                                order.bound.unwrap()
                            ));
                        }
                    }
                }
                AnalysisResult::Invariant {
                    point,
                    coords,
                    dims_by_degree,
                    dimension,
                    stabilized,
                    generators,
                    ..
                } => {
                    out.push_str(&format!("point:      {point} {coords}\n"));
                    out.push_str(&format!("dims by n:  {dims_by_degree:?}\n"));
                    out.push_str(&format!(
                        "dimension:  {dimension} ({})\n",
                        if *stabilized { "stabilized" } else { "not stabilized" }
                    ));
                    out.push_str(&format!("generators ({}):\n", generators.len()));
                    for g in generators {
                        out.push_str(&format!("  {g}\n"));
                    }
                }
                AnalysisResult::Profile { rows } => {
                    let name_w = rows.iter().map(|r| r.point.len()).max().unwrap_or(5).max(5);
                    let coord_w = rows.iter().map(|r| r.coords.len()).max().unwrap_or(6).max(6);
                    out.push_str(&format!(
                        "{:name_w$}  {:coord_w$}  {:>9}  {:>10}  dims by n\n",
                        "point", "coords", "dimension", "stabilized"
                    ));
                    for r in rows {
                        match (&r.dimension, &r.error) {
                            (Some(d), _) => out.push_str(&format!(
                                "{:name_w$}  {:coord_w$}  {:>9}  {:>10}  {:?}\n",
                                r.point,
                                r.coords,
                                d,
                                r.stabilized.unwrap_or(false),
                                r.dims_by_degree
                            )),
                            (None, Some(e)) => out.push_str(&format!(
                                "{:name_w$}  {:coord_w$}  error: {e}\n",
                                r.point, r.coords
                            )),
                            _ => {}
                        }
                    }
                }
                AnalysisResult::Extactic {
                    field,
                    degree,
                    polynomial,
                    vanishes,
                } => {
                    out.push_str(&format!("field:      {field}\ndegree:     {degree}\n"));
                    out.push_str(&format!("extactic:   {polynomial}\n"));
                    out.push_str(&format!("vanishes:   {vanishes}\n"));
                }
                AnalysisResult::FirstIntegral {
                    field,
                    degree,
                    pairs,
                    integral,
                    verified,
                } => {
                    out.push_str(&format!("field:      {field}\ndegree:     {degree}\n"));
                    out.push_str(&format!("darboux pairs ({}):\n", pairs.len()));
                    for p in pairs {
                        out.push_str(&format!(
                            "  {}   cofactor {}\n",
                            p.polynomial, p.cofactor
                        ));
                    }
                    match integral {
                        Some(fi) => out.push_str(&format!(
                            "integral:   ({}) / ({})   verified: {verified}\n",
                            fi.numerator, fi.denominator
                        )),
                        None => out.push_str("integral:   none\n"),
                    }
                }
            }
            for w in &record.warnings {
                out.push_str(&format!("warning: {w}\n"));
            }
            out.push_str(&format!("elapsed: {} us\n\n", record.micros));
        }
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        out
    }
}

/// Emission format for reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

/// Write a report to the destination (stdout when `None`).
pub fn emit_report(
    report: &Report,
    format: ReportFormat,
    destination: Option<&std::path::Path>,
) -> Result<()> {
    let body = match format {
        ReportFormat::Text => report.to_text(),
        ReportFormat::Json => report.to_json(),
    };
    match destination {
        None => {
            print!("{body}");
            Ok(())
        }
        Some(path) => {
            let mut f = std::fs::File::create(path).map_err(|e| FoliaError::InvalidOption {
                message: format!("cannot write {}: {e}", path.display()),
            })?;
            f.write_all(body.as_bytes())
                .map_err(|e| FoliaError::InvalidOption {
                    message: format!("cannot write {}: {e}", path.display()),
                })
        }
    }
}
