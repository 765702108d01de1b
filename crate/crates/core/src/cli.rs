//! Command dispatch for the `bgs` binary.
//!
//! Exit codes: 0 success / pass / found, 1 check failed or nothing found,
//! 2 usage or input error. Every error path writes a single line
//! `error: <Kind>: <message>` to the diagnostic stream.
//!
//! `BGS_MAX_SPACE` (optional) raises the search bound on the space size; the
//! group-order bound follows as one less. Unset means the built-in bounds.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::action::BinaryAction;
use crate::bgs::{parse_bgs, serialize_bgs, BgsDocument, Block};
use crate::binop::enumerate_h2;
use crate::duality::{
    action_to_field, admissible_params, field_to_action, roundtrip_action, roundtrip_field, FieldParams,
};
use crate::error::Error;
use crate::group::FiniteGroup;
use crate::identities::verify_lemma_suite;
use crate::search::{
    classify_transitive, describe_group, search_semitransitive_described, SearchOptions, GROUP_BOUND,
    SPACE_BOUND,
};

pub const MAX_SPACE_VAR: &str = "BGS_MAX_SPACE";

/// What a command produced: exit code, report, diagnostics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "bgs", about = "Binary G-spaces and finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check every block of a BGS file against its axioms and report properties.
    Verify {
        file: PathBuf,
        /// Also run the derived-element and distributivity identity suites.
        #[arg(long)]
        identities: bool,
    },
    /// Turn the first FIELD block into its unit-group action.
    DeriveAction {
        file: PathBuf,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Build a field from the first ACTION block.
    BuildField {
        file: PathBuf,
        #[arg(long)]
        x0: usize,
        #[arg(long)]
        x1: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Field -> action -> field, and action -> field -> action for all parameters.
    Roundtrip { file: PathBuf },
    /// Enumerate semitransitive distributive actions.
    Search {
        /// cyclic:N, symmetric:N, products joined by `x` (cyclic:2xcyclic:2), or a BGS file.
        #[arg(long)]
        group: String,
        #[arg(long)]
        space: usize,
        /// Disable every necessary-condition shortcut.
        #[arg(long)]
        no_prune: bool,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Count the binary transformation group on N points.
    H2 {
        #[arg(long)]
        size: usize,
    },
    /// Compare every transitive distributive action on |G| points with the
    /// conjugate left translation.
    ClassifyTransitive {
        #[arg(long)]
        group: String,
    },
}

/// Failure of a command; the kind becomes the diagnostic tag.
struct Failure {
    kind: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { kind: e.kind(), message: e.to_string() }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure { kind: "Io", message: format!("{}: {e}", path.display()) }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { kind: "Usage", message: message.into() }
}

type CmdResult = std::result::Result<(i32, String), Failure>;

/// Run one command; `argv` excludes the program name.
pub fn run_command<S: AsRef<str>>(argv: &[S]) -> Outcome {
    let args = std::iter::once("bgs").chain(argv.iter().map(AsRef::as_ref));
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome { code: 0, stdout: e.to_string(), stderr: String::new() };
            }
            let first = e.to_string();
            let first = first.lines().next().unwrap_or("").trim_start_matches("error: ");
            return Outcome { code: 2, stdout: String::new(), stderr: format!("error: Usage: {first}\n") };
        }
    };
    let mut stderr = String::new();
    let result = match cli.command {
        Command::Verify { file, identities } => verify(&file, identities),
        Command::DeriveAction { file, emit } => derive_action(&file, emit.as_deref()),
        Command::BuildField { file, x0, x1, s, emit } => {
            build_field(&file, FieldParams::new(x0, x1, s), emit.as_deref())
        }
        Command::Roundtrip { file } => roundtrip(&file),
        Command::Search { group, space, no_prune, emit } => {
            search(&group, space, no_prune, emit.as_deref(), &mut stderr)
        }
        Command::H2 { size } => h2(size),
        Command::ClassifyTransitive { group } => classify(&group),
    };
    match result {
        Ok((code, stdout)) => Outcome { code, stdout, stderr },
        Err(f) => {
            let message = f.message.replace('\n', " ");
            let _ = writeln!(stderr, "error: {}: {message}", f.kind);
            Outcome { code: 2, stdout: String::new(), stderr }
        }
    }
}

fn load(path: &Path) -> std::result::Result<BgsDocument, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    Ok(parse_bgs(&text)?)
}

fn emit(path: &Path, doc: &BgsDocument) -> std::result::Result<(), Failure> {
    std::fs::write(path, serialize_bgs(doc)).map_err(|e| io_failure(path, e))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

fn verify(path: &Path, identities: bool) -> CmdResult {
    let text = std::fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    let doc = match parse_bgs(&text) {
        Ok(doc) => doc,
        Err(e @ Error::Validation { .. }) => {
            return Ok((1, format!("FAIL: {e}\nresult: FAIL\n")));
        }
        Err(e) => return Err(e.into()),
    };
    let mut out = String::new();
    let mut ok = true;
    for block in &doc.blocks {
        match block {
            Block::Group { name, group } => {
                let _ = writeln!(
                    out,
                    "GROUP {name}: group axioms hold; order {}, abelian {}, cyclic {}",
                    group.order(),
                    yes_no(group.is_abelian()),
                    yes_no(group.is_cyclic())
                );
            }
            Block::Space(m) => {
                let _ = writeln!(out, "SPACE {m}");
            }
            Block::Action { group, action } => {
                let _ = writeln!(out, "ACTION {group}: action axioms hold");
                ok &= verify_action_block(&mut out, action, identities);
            }
            Block::Field(field) => {
                let _ = writeln!(
                    out,
                    "FIELD: field axioms hold; order {}, characteristic {}",
                    field.order(),
                    field.characteristic()
                );
            }
            Block::Op(op) => {
                let _ = writeln!(
                    out,
                    "OP: size {}, left quasigroup {}",
                    op.size(),
                    yes_no(crate::binop::is_left_quasigroup(op))
                );
            }
        }
    }
    let _ = writeln!(out, "result: {}", if ok { "PASS" } else { "FAIL" });
    Ok((if ok { 0 } else { 1 }, out))
}

fn verify_action_block(out: &mut String, action: &BinaryAction, identities: bool) -> bool {
    let _ = writeln!(out, "  effective: {}", yes_no(action.is_effective()));
    let _ = writeln!(out, "  transitive: {}", yes_no(action.is_transitive()));
    let _ = writeln!(out, "  semitransitive: {}", yes_no(action.is_semitransitive()));
    match action.is_distributive() {
        Ok(r) => {
            let _ = writeln!(
                out,
                "  distributive: {} (direct {}, biequivariant slices {}, conjugation {})",
                yes_no(r.holds()),
                yes_no(r.direct),
                yes_no(r.cond1),
                yes_no(r.cond2)
            );
        }
        Err(e) => {
            let _ = writeln!(out, "  distributive: FAIL ({e})");
            return false;
        }
    }
    if !identities {
        return true;
    }
    match verify_lemma_suite(action) {
        Ok(report) => {
            let _ = writeln!(out, "  identities:");
            out.push_str(&report.to_string());
            report.passed()
        }
        Err(e) => {
            let _ = writeln!(out, "  identities: not applicable ({e})");
            true
        }
    }
}

fn derive_action(path: &Path, emit_to: Option<&Path>) -> CmdResult {
    let doc = load(path)?;
    let field = doc.fields().next().ok_or_else(|| usage("file has no FIELD block"))?;
    let action = field_to_action(field);
    let mut out_doc = BgsDocument::new();
    out_doc.push_action("units", &action);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "derived the unit-group action of the field of order {}: {}",
        field.order(),
        action.summary()
    );
    match emit_to {
        Some(p) => {
            emit(p, &out_doc)?;
            let _ = writeln!(out, "wrote {}", p.display());
        }
        None => out.push_str(&serialize_bgs(&out_doc)),
    }
    Ok((0, out))
}

fn build_field(path: &Path, params: FieldParams, emit_to: Option<&Path>) -> CmdResult {
    let doc = load(path)?;
    let action = doc.actions().next().ok_or_else(|| usage("file has no ACTION block"))?;
    let built = action_to_field(action, params)?;
    let field = &built.field;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "built a field of order {} and characteristic {} with x0={} x1={} s={}",
        field.order(),
        field.characteristic(),
        params.x0,
        params.x1,
        params.s
    );
    let _ = writeln!(out, "point -> field element: {:?}", built.relabel);
    let _ = writeln!(out, "group element -> field element: {:?}", built.embedding);
    let mut out_doc = BgsDocument::new();
    out_doc.push_field(field);
    match emit_to {
        Some(p) => {
            emit(p, &out_doc)?;
            let _ = writeln!(out, "wrote {}", p.display());
        }
        None => out.push_str(&serialize_bgs(&out_doc)),
    }
    Ok((0, out))
}

fn roundtrip(path: &Path) -> CmdResult {
    let doc = load(path)?;
    let mut out = String::new();
    let mut ok = true;
    let mut checked = 0;
    for field in doc.fields() {
        checked += 1;
        match roundtrip_field(field) {
            Ok(iso) => {
                let _ = writeln!(
                    out,
                    "FIELD order {}: field -> action -> field PASS (identity map: {})",
                    field.order(),
                    yes_no(iso.is_identity())
                );
            }
            Err(e) => {
                ok = false;
                let _ = writeln!(out, "FIELD order {}: FAIL ({e})", field.order());
            }
        }
    }
    for action in doc.actions() {
        checked += 1;
        action.require_qualifying()?;
        let params = admissible_params(action);
        let mut failures = Vec::new();
        for &p in &params {
            if !matches!(roundtrip_action(action, p), Ok(true)) {
                failures.push(p);
            }
        }
        if failures.is_empty() {
            let _ = writeln!(
                out,
                "ACTION on {} points: action -> field -> action PASS for all {} parameter triples",
                action.space_size(),
                params.len()
            );
        } else {
            ok = false;
            let p = failures[0];
            let _ = writeln!(
                out,
                "ACTION on {} points: FAIL for {} of {} triples, first x0={} x1={} s={}",
                action.space_size(),
                failures.len(),
                params.len(),
                p.x0,
                p.x1,
                p.s
            );
        }
    }
    if checked == 0 {
        return Err(usage("file has no FIELD or ACTION block"));
    }
    let _ = writeln!(out, "result: {}", if ok { "PASS" } else { "FAIL" });
    Ok((if ok { 0 } else { 1 }, out))
}

/// `cyclic:N`, `symmetric:N`, products of those joined by `x`, or a BGS
/// file whose first GROUP block is used.
pub fn parse_group_spec(spec: &str) -> Result<(FiniteGroup, String), Error> {
    let factor = |s: &str| -> Result<Option<(FiniteGroup, String)>, Error> {
        let Some((kind, n)) = s.split_once(':') else { return Ok(None) };
        let Ok(n) = n.parse::<usize>() else { return Ok(None) };
        match kind {
            "cyclic" => Ok(Some((FiniteGroup::cyclic(n)?, format!("Z/{n}")))),
            "symmetric" => Ok(Some((FiniteGroup::symmetric(n)?, format!("S{n}")))),
            _ => Ok(None),
        }
    };
    let mut parts = Vec::new();
    for piece in spec.split('x') {
        match factor(piece)? {
            Some(p) => parts.push(p),
            None => {
                parts.clear();
                break;
            }
        }
    }
    if let Some(((first, name), rest)) = parts.split_first() {
        let mut group = first.clone();
        let mut names = vec![name.clone()];
        for (g, n) in rest {
            group = group.direct_product(g);
            names.push(n.clone());
        }
        let description = format!("{} ({})", names.join(" x "), describe_group(&group));
        return Ok((group, description));
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(Error::Parse {
            line: 0,
            message: format!("group spec {spec:?} is neither cyclic:N, symmetric:N nor a file"),
        });
    }
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse { line: 0, message: format!("{spec}: {e}") })?;
    let doc = parse_bgs(&text)?;
    let (name, group) = doc
        .groups()
        .next()
        .ok_or_else(|| Error::Parse { line: 0, message: format!("{spec} has no GROUP block") })?;
    Ok((group.clone(), format!("{name} ({})", describe_group(group))))
}

fn search_options(no_prune: bool) -> std::result::Result<SearchOptions, Failure> {
    let mut options = if no_prune { SearchOptions::no_prune() } else { SearchOptions::default() };
    if let Ok(v) = std::env::var(MAX_SPACE_VAR) {
        let m: usize = v
            .parse()
            .map_err(|_| usage(format!("{MAX_SPACE_VAR} must be a positive integer, got {v:?}")))?;
        options.max_space = m.max(SPACE_BOUND);
        options.max_group = (m.saturating_sub(1)).max(GROUP_BOUND);
    }
    Ok(options)
}

fn search(
    spec: &str,
    space: usize,
    no_prune: bool,
    emit_to: Option<&Path>,
    stderr: &mut String,
) -> CmdResult {
    let (group, description) = parse_group_spec(spec)?;
    let options = search_options(no_prune)?;
    let report = search_semitransitive_described(&group, space, options, description)?;
    let _ = writeln!(stderr, "elapsed: {:.3}s", report.elapsed.as_secs_f64());
    let mut out = report.to_string();
    if let Some(p) = emit_to {
        let mut doc = BgsDocument::new();
        doc.push_group("g", &group);
        doc.blocks.push(Block::Space(space));
        for action in &report.found {
            doc.blocks.push(Block::Action { group: "g".into(), action: action.clone() });
        }
        for field in &report.fields {
            doc.push_field(field);
        }
        emit(p, &doc)?;
        let _ = writeln!(out, "wrote {}", p.display());
    }
    Ok((if report.count_raw > 0 { 0 } else { 1 }, out))
}

fn h2(size: usize) -> CmdResult {
    let count = enumerate_h2(size)?.count();
    let factorial: usize = (1..=size).product();
    let expected = factorial.pow(size as u32);
    let mut out = String::new();
    let _ = writeln!(out, "H2 on {size} points: {count} elements");
    let _ = writeln!(out, "(m!)^m = {expected}: {}", if count == expected { "match" } else { "MISMATCH" });
    Ok((if count == expected { 0 } else { 1 }, out))
}

fn classify(spec: &str) -> CmdResult {
    let (group, description) = parse_group_spec(spec)?;
    let report = classify_transitive(&group)?;
    let mut out = format!("group: {description}\n");
    out.push_str(&report.to_string());
    let ok = report.all_biequimorphic() && !report.actions.is_empty();
    let _ = writeln!(out, "result: {}", if ok { "PASS" } else { "FAIL" });
    Ok((if ok { 0 } else { 1 }, out))
}
