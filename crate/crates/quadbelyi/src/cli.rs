//! Command dispatch for the `quadbelyi` binary.
//!
//! Every command prints a human-readable report on standard output; with the
//! global `--json` flag the report becomes a single JSON object with stable
//! keys (`error`, `passport`, `j`, `count`, `entries`, ...). Commands whose
//! natural output already is a machine format (`dessin lift`, `dessin
//! quotient`, `render`) print that document in both modes.
//!
//! Exit codes: 0 success, 1 verification failure, 2 parse or usage error,
//! 3 structural obstruction (`ParityObstruction`, `BranchCountError`,
//! `NotRegularOnCurve`).

use std::fs;

use serde_json::{json, Value};

use crate::belyi::verify_belyi;
use crate::corpus::{self, Catalog, EntryStatus};
use crate::curve::j_invariant;
use crate::dessin::{
    classify_symmetries, enumerate_dessins, lift_double_cover, quotient_by_antisymmetry, Dessin,
    DessinError, InvolutionReport, LiftMode,
};
use crate::passport::{correspondent_passports, Passport, PassportError};
use crate::perm::Perm;
use crate::qcorr::{q_correspond, QcorrError};
use crate::render::{render_svg, DomainShape, RenderOptions};

const USAGE: &str = "\
usage: quadbelyi [--json] <command>

  passport genus <passport>           genus of a passport
  passport correspond <passport>      correspondent genus-0 passports of a genus-1 passport
  dessin enumerate <passport>         all dessins with the passport, up to isomorphism
  dessin lift <file> [--faces a,b]    double-cover lift of a genus-0 dessin
  dessin quotient <file>              quotient of a genus-1 dessin by an antisymmetry
  dessin detect <file>                involutive symmetries of a dessin
  map verify <file>                   check that a map file is a Belyi map
  map correspond <file>               quadratic-correspondence data of a map file
  painleve verify                     replay the built-in Painleve VI entries
  corpus check [filter]               replay the built-in catalog
  render <file> [--rhombus]           SVG drawing of a genus-0 or genus-1 dessin

flags: --json machine-readable reports; --rhombus rhombic fundamental domain;
       --faces comma-separated face indices to branch over when lifting
exit:  0 ok, 1 verification failure, 2 parse or usage error, 3 structural obstruction";

struct Output {
    text: String,
    /// None when `text` already is the machine-readable document.
    json: Option<Value>,
    notes: Vec<String>,
    exit: i32,
}

impl Output {
    fn report(text: String, json: Value) -> Output {
        Output { text, json: Some(json), notes: Vec::new(), exit: 0 }
    }

    fn document(text: String) -> Output {
        Output { text, json: None, notes: Vec::new(), exit: 0 }
    }
}

struct Fail {
    name: String,
    detail: String,
    code: i32,
}

impl Fail {
    fn new(code: i32, name: &str, detail: impl std::fmt::Display) -> Fail {
        Fail { name: name.into(), detail: detail.to_string(), code }
    }

    fn parse(detail: impl std::fmt::Display) -> Fail {
        Fail::new(2, "ParseError", detail)
    }
}

/// Print without panicking when the consumer closes the pipe early.
fn emit(line: impl std::fmt::Display) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout(), "{line}");
}

fn emit_err(line: impl std::fmt::Display) {
    use std::io::Write;
    let _ = writeln!(std::io::stderr(), "{line}");
}

pub fn dispatch(args: &[String]) -> i32 {
    let mut json_mode = false;
    let mut rhombus = false;
    let mut faces: Option<Vec<usize>> = None;
    let mut pos: Vec<&str> = Vec::new();
    let mut it = args.iter().map(String::as_str);
    while let Some(a) = it.next() {
        match a {
            "--json" => json_mode = true,
            "--rhombus" => rhombus = true,
            "--faces" => {
                let parsed = it.next().map(|list| {
                    list.split(',')
                        .map(|t| t.trim().parse::<usize>())
                        .collect::<Result<Vec<_>, _>>()
                });
                match parsed {
                    Some(Ok(v)) => faces = Some(v),
                    _ => return usage_error("`--faces` needs a comma-separated list of indices"),
                }
            }
            "-h" | "--help" => {
                emit(USAGE);
                return 0;
            }
            _ if a.starts_with('-') => return usage_error(&format!("unknown flag `{a}`")),
            _ => pos.push(a),
        }
    }

    let result = match pos.as_slice() {
        ["passport", "genus", p] => passport_genus(p),
        ["passport", "correspond", p] => passport_correspond(p),
        ["dessin", "enumerate", p] => dessin_enumerate(p),
        ["dessin", "lift", f] => dessin_lift(f, faces),
        ["dessin", "quotient", f] => dessin_quotient(f),
        ["dessin", "detect", f] => dessin_detect(f),
        ["map", "verify", f] => map_verify(f),
        ["map", "correspond", f] => map_correspond(f),
        ["painleve", "verify"] => catalog_run(Some("painleve")),
        ["corpus", "check"] => catalog_run(None),
        ["corpus", "check", f] => catalog_run(Some(f)),
        ["render", f] => render_command(f, rhombus),
        [] => return usage_error("missing command"),
        other => return usage_error(&format!("unrecognized command `{}`", other.join(" "))),
    };

    match result {
        Ok(out) => {
            match (&out.json, json_mode) {
                (Some(v), true) => emit(v),
                _ => emit(&out.text),
            }
            for n in &out.notes {
                emit_err(n);
            }
            out.exit
        }
        Err(f) => {
            if json_mode {
                emit(json!({ "error": f.name }));
            }
            emit_err(format!("error: {}", f.detail));
            f.code
        }
    }
}

fn usage_error(msg: &str) -> i32 {
    emit_err(format!("error: {msg}"));
    emit_err(USAGE);
    2
}

fn passport_fail(e: PassportError) -> Fail {
    let name = match &e {
        PassportError::UnequalDegrees(_) => "UnequalDegrees",
        PassportError::NonIntegerGenus => "NonIntegerGenus",
        PassportError::NegativeGenus => "NegativeGenus",
        PassportError::WrongGenus { .. } => "WrongGenus",
        PassportError::InconsistentDecomposition(_) => "InconsistentDecomposition",
        PassportError::Parse(_) => "ParseError",
    };
    let code = match &e {
        PassportError::Parse(_)
        | PassportError::UnequalDegrees(_)
        | PassportError::WrongGenus { .. } => 2,
        _ => 1,
    };
    Fail::new(code, name, e)
}

fn dessin_fail(e: DessinError) -> Fail {
    let name = match &e {
        DessinError::SizeMismatch => "SizeMismatch",
        DessinError::NotTransitive => "NotTransitive",
        DessinError::NotAPermutation(_) => "NotAPermutation",
        DessinError::Format(_) => "Format",
        DessinError::DegreeTooLarge { .. } => "DegreeTooLarge",
        DessinError::WrongGenus { .. } => "WrongGenus",
        DessinError::BranchCountError { .. } => "BranchCountError",
        DessinError::WhiteValency { .. } => "WhiteValency",
        DessinError::ParityObstruction => "ParityObstruction",
        DessinError::SingularSystem => "SingularSystem",
        DessinError::BadFaceIndex(_) => "BadFaceIndex",
        DessinError::InvalidSymmetry(_) => "InvalidSymmetry",
    };
    let code = match &e {
        DessinError::ParityObstruction | DessinError::BranchCountError { .. } => 3,
        DessinError::Format(_)
        | DessinError::SizeMismatch
        | DessinError::NotAPermutation(_)
        | DessinError::NotTransitive
        | DessinError::DegreeTooLarge { .. }
        | DessinError::BadFaceIndex(_) => 2,
        _ => 1,
    };
    Fail::new(code, name, e)
}

fn read_dessin(path: &str) -> Result<(Dessin, Option<String>), Fail> {
    let text = fs::read_to_string(path).map_err(|e| Fail::new(2, "Io", format!("{path}: {e}")))?;
    Dessin::from_file_string(&text).map_err(dessin_fail)
}

/// Cycle notation with 1-indexed entries, fixed points omitted.
fn fmt_cycles(p: &Perm) -> String {
    let cycles: Vec<String> = p
        .cycles()
        .into_iter()
        .filter(|c| c.len() > 1)
        .map(|c| {
            let body: Vec<String> = c.iter().map(|e| (e + 1).to_string()).collect();
            format!("({})", body.join(" "))
        })
        .collect();
    if cycles.is_empty() {
        "id".into()
    } else {
        cycles.concat()
    }
}

fn passport_genus(arg: &str) -> Result<Output, Fail> {
    let p: Passport = arg.parse().map_err(passport_fail)?;
    let g = p.genus().map_err(passport_fail)?;
    Ok(Output::report(
        format!("genus {g}"),
        json!({ "passport": p.to_string(), "genus": g }),
    ))
}

fn passport_correspond(arg: &str) -> Result<Output, Fail> {
    let p: Passport = arg.parse().map_err(passport_fail)?;
    let shapes = correspondent_passports(&p, true).map_err(passport_fail)?;
    let mut lines = Vec::new();
    let mut entries = Vec::new();
    for s in &shapes {
        let tag = if s.degenerate { "  (degenerate)" } else { "" };
        lines.push(format!(
            "{}  k={} l={} B=[{}] C=[{}]{tag}",
            s.genus0, s.k, s.ell, s.b, s.c
        ));
        entries.push(json!({
            "passport": s.genus0.to_string(),
            "k": s.k,
            "l": s.ell,
            "b": s.b.to_string(),
            "c": s.c.to_string(),
            "degenerate": s.degenerate,
        }));
    }
    lines.push(format!("{} correspondent passport(s)", shapes.len()));
    Ok(Output::report(
        lines.join("\n"),
        json!({ "passport": p.to_string(), "count": shapes.len(), "entries": entries }),
    ))
}

fn dessin_enumerate(arg: &str) -> Result<Output, Fail> {
    let p: Passport = arg.parse().map_err(passport_fail)?;
    let ds = enumerate_dessins(&p).map_err(dessin_fail)?;
    let mut lines = vec![format!("{} dessin(s) with passport {p}", ds.len())];
    let mut entries = Vec::new();
    for (i, d) in ds.iter().enumerate() {
        let file = d.to_file_string(Some(&format!("{p} #{i}")));
        let value: Value = serde_json::from_str(&file).expect("dessin serialization is JSON");
        lines.push(file);
        entries.push(value);
    }
    Ok(Output::report(
        lines.join("\n"),
        json!({ "passport": p.to_string(), "count": ds.len(), "entries": entries }),
    ))
}

fn dessin_lift(path: &str, faces: Option<Vec<usize>>) -> Result<Output, Fail> {
    let (d, label) = read_dessin(path)?;
    let mode = match faces {
        Some(faces) => LiftMode::ChosenBranch { faces },
        None => LiftMode::Strict,
    };
    let lift = lift_double_cover(&d, mode).map_err(dessin_fail)?;
    let out_label = match label {
        Some(l) => format!("{l} lifted"),
        None => "lifted".into(),
    };
    let file = lift.upstairs.to_file_string(Some(&out_label));
    let value: Value = serde_json::from_str(&file).expect("dessin serialization is JSON");
    let mut out = Output::report(file, value);
    out.notes.push(format!("passport {}", lift.upstairs.passport()));
    out.notes.push(format!("deck involution {}", fmt_cycles(&lift.deck_involution)));
    out.notes.push(format!(
        "branch edges {:?}, branch faces {:?}",
        lift.branch_edges, lift.branch_faces
    ));
    Ok(out)
}

fn dessin_quotient(path: &str) -> Result<Output, Fail> {
    let (d, label) = read_dessin(path)?;
    let report = classify_symmetries(&d);
    let pick = report
        .color_swap_involutions
        .iter()
        .find(|r| r.fixed_structures == 4)
        .ok_or_else(|| {
            Fail::new(1, "NoAntisymmetry", "no color-swap involution with 4 fixed structures")
        })?;
    let q = quotient_by_antisymmetry(&d, &pick.perm).map_err(dessin_fail)?;
    let out_label = match label {
        Some(l) => format!("{l} quotient"),
        None => "quotient".into(),
    };
    let file = q.to_file_string(Some(&out_label));
    let value: Value = serde_json::from_str(&file).expect("dessin serialization is JSON");
    let mut out = Output::report(file, value);
    out.notes.push(format!("passport {}", q.passport()));
    out.notes.push(format!("antisymmetry {}", fmt_cycles(&pick.perm)));
    Ok(out)
}

fn involution_json(kind: &str, r: &InvolutionReport) -> Value {
    json!({
        "type": kind,
        "perm": fmt_cycles(&r.perm),
        "fixed_edges": r.fixed_edges,
        "invariant_blacks": r.invariant_blacks,
        "invariant_whites": r.invariant_whites,
        "invariant_faces": r.invariant_faces,
        "fixed_structures": r.fixed_structures,
    })
}

fn dessin_detect(path: &str) -> Result<Output, Fail> {
    let (d, _) = read_dessin(path)?;
    let r = classify_symmetries(&d);
    let mut lines = vec![format!("classification: {:?}", r.classification)];
    let mut entries = Vec::new();
    for inv in &r.color_swap_involutions {
        lines.push(format!(
            "color swap {}: fixed edges {}, invariant faces {}, fixed structures {}",
            fmt_cycles(&inv.perm),
            inv.fixed_edges,
            inv.invariant_faces,
            inv.fixed_structures
        ));
        entries.push(involution_json("color-swap", inv));
    }
    for inv in &r.color_preserving_involutions {
        lines.push(format!(
            "color preserving {}: invariant blacks {}, whites {}, faces {}, fixed structures {}",
            fmt_cycles(&inv.perm),
            inv.invariant_blacks,
            inv.invariant_whites,
            inv.invariant_faces,
            inv.fixed_structures
        ));
        entries.push(involution_json("color-preserving", inv));
    }
    Ok(Output::report(
        lines.join("\n"),
        json!({
            "classification": format!("{:?}", r.classification),
            "count": entries.len(),
            "entries": entries,
        }),
    ))
}

fn read_map_entry(path: &str) -> Result<corpus::CorpusEntry, Fail> {
    let text = fs::read_to_string(path).map_err(|e| Fail::new(2, "Io", format!("{path}: {e}")))?;
    corpus::parse_map_file(&text).map_err(Fail::parse)
}

fn map_verify(path: &str) -> Result<Output, Fail> {
    let e = read_map_entry(path)?;
    let phi = corpus::entry_phi(&e).map_err(Fail::parse)?;
    let map = verify_belyi(&phi).map_err(|err| {
        Fail::new(1, corpus::error_name_belyi(&err), format!("not a Belyi map: {err}"))
    })?;
    if let Some(src) = e.get("passport") {
        let want: Passport = src.parse().map_err(passport_fail)?;
        if map.passport() != &want {
            return Err(Fail::new(
                1,
                "PassportMismatch",
                format!("passport is {}, the file records {want}", map.passport()),
            ));
        }
    }
    Ok(Output::report(
        format!("Belyi map of degree {} with passport {}", map.degree(), map.passport()),
        json!({ "passport": map.passport().to_string(), "degree": map.degree() }),
    ))
}

fn map_correspond(path: &str) -> Result<Output, Fail> {
    let e = read_map_entry(path)?;
    let phi = corpus::entry_phi(&e).map_err(Fail::parse)?;
    let map = verify_belyi(&phi).map_err(|err| {
        Fail::new(1, corpus::error_name_belyi(&err), format!("not a Belyi map: {err}"))
    })?;
    match q_correspond(&map) {
        Ok(c) => {
            if !c.identity_holds() {
                return Err(Fail::new(1, "IdentityFailure", "phi0 != 4 phi1 (1 - phi1)"));
            }
            let j = j_invariant(c.d()).map_err(|err| Fail::new(1, "CurveError", err))?;
            let text = format!(
                "d : {}\ncurve : w^2 = {}\ngenus-1 passport : {}\nj : {}\nidentity : holds",
                c.d().display("x"),
                c.curve().display("x"),
                c.genus1_passport(),
                j
            );
            Ok(Output::report(
                text,
                json!({
                    "passport": c.genus1_passport().to_string(),
                    "d": c.d().display("x"),
                    "j": j.to_string(),
                    "identity": true,
                }),
            ))
        }
        Err(QcorrError::DegenerateRational { phi1 }) => Err(Fail::new(
            1,
            "DegenerateRational",
            format!("degenerates to the rational map phi1 = {}", phi1.display("x")),
        )),
        Err(err) => {
            let code = match err {
                QcorrError::NotRegularOnCurve { .. } => 3,
                _ => 1,
            };
            Err(Fail::new(code, corpus::error_name_qcorr(&err), err))
        }
    }
}

fn catalog_run(filter: Option<&str>) -> Result<Output, Fail> {
    let report = Catalog::builtin().run(filter);
    let (passed, flagged, failed) = report.counts();
    let entries: Vec<Value> = report
        .results
        .iter()
        .map(|r| {
            let (status, detail) = match &r.status {
                EntryStatus::Passed => ("ok", None),
                EntryStatus::FlagReproduced => ("flagged", None),
                EntryStatus::Failed(msg) => ("fail", Some(msg.as_str())),
            };
            match detail {
                Some(d) => json!({ "id": r.id, "kind": r.kind, "status": status, "detail": d }),
                None => json!({ "id": r.id, "kind": r.kind, "status": status }),
            }
        })
        .collect();
    let mut out = Output::report(
        report.to_string(),
        json!({
            "count": report.results.len(),
            "passed": passed,
            "flagged": flagged,
            "failed": failed,
            "entries": entries,
        }),
    );
    if !report.all_good() {
        out.exit = 1;
    }
    Ok(out)
}

fn render_command(path: &str, rhombus: bool) -> Result<Output, Fail> {
    let (d, _) = read_dessin(path)?;
    let opts = RenderOptions {
        shape: if rhombus { DomainShape::Rhombus } else { DomainShape::Rectangle },
        ..RenderOptions::default()
    };
    let svg = render_svg(&d, &opts).map_err(|err| Fail::new(1, "UnsupportedGenus", err))?;
    Ok(Output::document(svg))
}
