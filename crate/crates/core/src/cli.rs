//! Command dispatch for the `uext` binary.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::{self, CommAlgebra};
use crate::cohomology::{self, Cocycle2};
use crate::error::{Error, Result};
use crate::io;
use crate::lie::{self, LieAlgebra};
use crate::linalg::Rational;
use crate::monoid::{self, MonoidKind};
use crate::tensor::{self, ExtensionTensor, Labeling, ValidationReport};

/// Exit status and printable report of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandResult {
    /// 0 success, 1 the input object is mathematically invalid, 2 usage or
    /// I/O failure.
    pub exit_code: i32,
    pub report: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "uext",
    version,
    about = "Exact tools for universal Lie algebra extension tensors"
)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check symmetry and commuting slice matrices.
    Validate { tensor: PathBuf },
    /// Brute-force the Lie axioms of the extended bracket over a carrier.
    Jacobi {
        tensor: PathBuf,
        /// Preset name (sl2, so3, heis3, gl2, abelian-k) or a carrier file.
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        max_dim: Option<usize>,
    },
    /// Nilpotency, unit, power filtration and abelian tail.
    Classify { tensor: PathBuf },
    /// Basis adapted to the power filtration of a nilpotent algebra.
    Canonicalize {
        tensor: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Decompose into ideals; writes the split report.
    Split {
        tensor: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Second cohomology with trivial coefficients.
    H2 { tensor: PathBuf },
    /// One-dimensional central extensions.
    Extend {
        tensor: PathBuf,
        /// Symmetric matrix file used as the cocycle.
        #[arg(long, conflicts_with = "all")]
        cocycle: Option<PathBuf>,
        /// One extension per H² basis class.
        #[arg(long)]
        all: bool,
        /// Output directory.
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Adjoin a unit as the new first index.
    Unitize {
        tensor: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Remove the unit at the first index.
    Deunitize {
        tensor: PathBuf,
        /// First move to a basis whose first vector is the unit and whose
        /// other vectors span an ideal.
        #[arg(long)]
        rebase: bool,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Quotient of a canonical solvable tensor by its last `k` indices.
    Reduce {
        tensor: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Generate a named family.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        l1: Option<Rational>,
        #[arg(long, allow_hyphen_values = true)]
        l2: Option<Rational>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<Rational>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Monoid table utilities.
    Monoid {
        #[command(subcommand)]
        action: MonoidAction,
    },
    /// Enumerate all SE-functions on 1..n.
    SeEnum {
        #[arg(long)]
        n: usize,
        /// Keep one table per relabeling class.
        #[arg(long)]
        iso_reduce: bool,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum MonoidAction {
    /// Check the conditions for the table's kind.
    Validate { monoid: PathBuf },
    /// Tensor with entries δ_k^{f(i,j)}.
    ToTensor {
        monoid: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Drop the top element of an SE table.
    Restrict {
        monoid: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// The Leibnitz SE table on 1..n.
    Leibnitz {
        #[arg(long)]
        n: usize,
        /// Use f(i,j) = i+j only for i+j < n.
        #[arg(long)]
        strict: bool,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    ZpAdd,
    ZpMul,
    Leibnitz,
    Lambda,
    Crmhd,
}

/// Outcome of a command before rendering.
struct Outcome {
    ok: bool,
    text: String,
    value: Value,
}

impl Outcome {
    fn ok(text: impl Into<String>, value: Value) -> Self {
        Outcome {
            ok: true,
            text: text.into(),
            value,
        }
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::Load(_)
        | Error::InvalidArgument(_)
        | Error::UnknownPreset(_)
        | Error::CapExceeded { .. } => 2,
        _ => 1,
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return CommandResult {
                exit_code: code,
                report: e.to_string(),
            };
        }
    };
    let json = cli.json;
    match execute(cli.command) {
        Ok(out) => CommandResult {
            exit_code: if out.ok { 0 } else { 1 },
            report: if json {
                serde_json::to_string_pretty(&out.value).expect("serializable") + "\n"
            } else {
                out.text
            },
        },
        Err(e) => CommandResult {
            exit_code: exit_code_for(&e),
            report: if json {
                serde_json::to_string_pretty(&json!({ "error": e.to_string() }))
                    .expect("serializable")
                    + "\n"
            } else {
                format!("error: {e}\n")
            },
        },
    }
}

fn algebra_of(w: ExtensionTensor) -> Result<CommAlgebra> {
    CommAlgebra::new(w)
}

fn save(path: &Path, w: &ExtensionTensor) -> Result<()> {
    io::save_tensor(path, w)
}

fn wrote(path: &Path, w: &ExtensionTensor) -> String {
    format!(
        "wrote {} (n = {}, {} stored entries)\n",
        path.display(),
        w.n(),
        w.nnz()
    )
}

fn validation_text(r: &ValidationReport, labeling: Labeling) -> String {
    if r.is_valid() {
        return "valid: symmetric, commuting slices\n".to_string();
    }
    let off = labeling.display_offset();
    let mut s = format!(
        "invalid: symmetric={}, commuting={}, {} violation(s)\n",
        r.symmetric,
        r.commuting,
        r.violations.len()
    );
    for v in &r.violations {
        let idx: Vec<String> = v.indices.iter().map(|i| (i - off).to_string()).collect();
        s.push_str(&format!(
            "  {:?} ({}): {} != {}\n",
            v.kind,
            idx.join(","),
            v.lhs,
            v.rhs
        ));
    }
    s
}

fn validation_value(r: &ValidationReport, labeling: Labeling) -> Value {
    let off = labeling.display_offset();
    json!({
        "valid": r.is_valid(),
        "symmetric": r.symmetric,
        "commuting": r.commuting,
        "violations": r.violations.iter().map(|v| json!({
            "kind": v.kind,
            "indices": v.indices.iter().map(|i| i - off).collect::<Vec<_>>(),
            "lhs": v.lhs.to_string(),
            "rhs": v.rhs.to_string(),
        })).collect::<Vec<_>>(),
    })
}

fn load_carrier(spec: &str) -> Result<LieAlgebra> {
    match lie::preset_algebra(spec) {
        Err(Error::UnknownPreset(name)) => {
            let path = Path::new(spec);
            if path.exists() {
                io::parse_lie(&io::read_text(path)?)
            } else {
                Err(Error::UnknownPreset(name))
            }
        }
        other => other,
    }
}

fn execute(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Validate { tensor } => {
            let raw = io::load_raw_tensor(&tensor)?;
            let labeling = raw.labeling();
            let report = match raw.to_tensor() {
                Ok(w) => tensor::validate(&w),
                Err(Error::Load(_)) => tensor::validate(&raw.mirrored()),
                Err(e) => return Err(e),
            };
            Ok(Outcome {
                ok: report.is_valid(),
                text: validation_text(&report, labeling),
                value: validation_value(&report, labeling),
            })
        }
        Command::Jacobi {
            tensor,
            algebra,
            max_dim,
        } => {
            let raw = io::load_raw_tensor(&tensor)?.mirrored();
            let carrier = load_carrier(&algebra)?;
            let r = lie::jacobi_check(&raw, &carrier, max_dim)?;
            let text = if r.holds {
                format!(
                    "Jacobi holds over {} (dimension {}, {} triples)\n",
                    r.carrier, r.dim, r.triples_checked
                )
            } else {
                format!(
                    "Lie axioms fail over {}: {:?} at {:?}\n",
                    r.carrier,
                    r.witness.as_ref().map(|w| w.kind),
                    r.witness.as_ref().map(|w| &w.elements)
                )
            };
            Ok(Outcome {
                ok: r.holds,
                text,
                value: serde_json::to_value(&r).expect("serializable"),
            })
        }
        Command::Classify { tensor } => {
            let w = io::load_tensor(&tensor)?;
            let a = algebra_of(w.clone())?;
            let dims = a.filtration_dims();
            let index = a.nilpotency_index();
            let unit = a.find_unit();
            let canonical = tensor::is_canonical_solvable(&w);
            let tail = tensor::abelian_tail_depth(&w).ok();
            let unit_strings = unit
                .as_ref()
                .map(|u| u.coords.iter().map(Rational::to_string).collect::<Vec<_>>());
            let mut text = String::new();
            text.push_str(&format!("n: {}\n", w.n()));
            text.push_str(&format!(
                "nilpotent: {}{}\n",
                index.is_some(),
                index.map(|m| format!(" (index {m})")).unwrap_or_default()
            ));
            text.push_str(&format!(
                "unit: {}\n",
                unit_strings
                    .as_ref()
                    .map(|u| format!("[{}]", u.join(", ")))
                    .unwrap_or_else(|| "none".into())
            ));
            text.push_str(&format!("filtration dims: {dims:?}\n"));
            text.push_str(&format!("canonical solvable: {canonical}\n"));
            if let Some(t) = tail {
                text.push_str(&format!("abelian tail depth: {t}\n"));
            }
            Ok(Outcome::ok(
                text,
                json!({
                    "n": w.n(),
                    "nilpotent": index.is_some(),
                    "nilpotency_index": index,
                    "unit": unit_strings,
                    "filtration_dims": dims,
                    "canonical_solvable": canonical,
                    "abelian_tail_depth": tail,
                }),
            ))
        }
        Command::Canonicalize { tensor, output } => {
            let a = algebra_of(io::load_tensor(&tensor)?)?;
            let (change, w) = algebra::canonicalize(&a)?;
            save(&output, &w)?;
            Ok(Outcome::ok(
                wrote(&output, &w),
                json!({
                    "output": output,
                    "change": io::matrix_to_value(change.matrix()),
                    "tensor": io::tensor_to_value(&w),
                }),
            ))
        }
        Command::Split { tensor, output } => {
            let a = algebra_of(io::load_tensor(&tensor)?)?;
            let r = algebra::split(&a)?;
            let value = io::split_report_to_value(&r);
            if let Some(path) = &output {
                let text = serde_json::to_string_pretty(&value).expect("serializable") + "\n";
                io::write_text(path, &text)?;
            }
            let mut text = format!(
                "blocks: {:?}{}\n",
                r.dims(),
                if r.complete {
                    ""
                } else {
                    " (incomplete over Q)"
                }
            );
            if let Some(path) = &output {
                text.push_str(&format!("wrote {}\n", path.display()));
            }
            Ok(Outcome::ok(text, value))
        }
        Command::H2 { tensor } => {
            let w = io::load_tensor(&tensor)?;
            algebra_of(w.clone())?;
            let r = cohomology::h2(&w)?;
            let mut text = format!(
                "dim Z2 = {}, dim B2 = {}, dim H2 = {}\n",
                r.dim_z2, r.dim_b2, r.dim_h2
            );
            for (i, rep) in r.representatives.iter().enumerate() {
                let rows: Vec<String> = rep
                    .to_rows()
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(Rational::to_string)
                            .collect::<Vec<_>>()
                            .join(" ")
                    })
                    .collect();
                text.push_str(&format!(
                    "representative {}: [{}]\n",
                    i + 1,
                    rows.join("; ")
                ));
            }
            Ok(Outcome::ok(text, io::h2_report_to_value(&r)))
        }
        Command::Extend {
            tensor,
            cocycle,
            all,
            output,
        } => {
            let w = io::load_tensor(&tensor)?;
            algebra_of(w.clone())?;
            let exts = match (cocycle, all) {
                (Some(path), false) => {
                    let r = io::parse_matrix(&io::read_text(&path)?)?;
                    vec![cohomology::extend_with_cocycle(&w, &Cocycle2::new(&w, r)?)?]
                }
                (None, true) => cohomology::enumerate_extensions(&w)?,
                _ => {
                    return Err(Error::InvalidArgument(
                        "give either --cocycle <matrix> or --all".into(),
                    ))
                }
            };
            let mut text = String::new();
            let mut files = Vec::new();
            for (i, e) in exts.iter().enumerate() {
                let path = output.join(format!("ext-{}.uext.json", i + 1));
                save(&path, e)?;
                text.push_str(&wrote(&path, e));
                files.push(path);
            }
            Ok(Outcome::ok(text, json!({ "outputs": files })))
        }
        Command::Unitize { tensor, output } => {
            let w = io::load_tensor(&tensor)?;
            algebra_of(w.clone())?;
            let u = tensor::unitize(&w);
            save(&output, &u)?;
            Ok(Outcome::ok(
                wrote(&output, &u),
                json!({ "output": output, "n": u.n() }),
            ))
        }
        Command::Deunitize {
            tensor,
            rebase,
            output,
        } => {
            let mut w = io::load_tensor(&tensor)?;
            let a = algebra_of(w.clone())?;
            if rebase {
                w = algebra::unit_first_basis(&a)?.1;
            }
            let d = tensor::deunitize(&w)?;
            save(&output, &d)?;
            Ok(Outcome::ok(
                wrote(&output, &d),
                json!({ "output": output, "n": d.n() }),
            ))
        }
        Command::Reduce { tensor, k, output } => {
            let w = io::load_tensor(&tensor)?;
            let r = tensor::reduce(&w, k)?;
            save(&output, &r)?;
            Ok(Outcome::ok(
                wrote(&output, &r),
                json!({ "output": output, "n": r.n() }),
            ))
        }
        Command::Gen {
            family,
            p,
            n,
            l1,
            l2,
            beta,
            output,
        } => {
            let need = |v: Option<usize>, flag: &str| {
                v.ok_or_else(|| {
                    Error::InvalidArgument(format!("--{flag} is required for this family"))
                })
            };
            let one = Rational::one();
            let w = match family {
                Family::ZpAdd => monoid::monoid_to_tensor(&monoid::zp_additive(need(p, "p")?)?)?,
                Family::ZpMul => {
                    monoid::monoid_to_tensor(&monoid::zp_multiplicative(need(p, "p")?)?)?
                }
                Family::Leibnitz => {
                    let n = need(n, "n")?;
                    if n == 0 {
                        return Err(Error::InvalidArgument("n must be at least 1".into()));
                    }
                    monoid::leibnitz(n, l1.as_ref().unwrap_or(&one))
                }
                Family::Lambda => monoid::lambda_family(
                    need(n, "n")?,
                    l1.as_ref().unwrap_or(&one),
                    l2.as_ref().unwrap_or(&one),
                )?,
                Family::Crmhd => monoid::crmhd(beta.as_ref().unwrap_or(&one)),
            };
            save(&output, &w)?;
            Ok(Outcome::ok(
                wrote(&output, &w),
                json!({ "output": output, "n": w.n() }),
            ))
        }
        Command::Monoid { action } => monoid_command(action),
        Command::SeEnum {
            n,
            iso_reduce,
            output,
        } => {
            let mut census = monoid::enumerate_se(n, Some(monoid::max_n_from_env()))?;
            let total = census.count();
            if iso_reduce {
                census = monoid::iso_reduce(&census);
            }
            io::write_text(&output, &io::census_to_jsonl(&census.tables))?;
            Ok(Outcome::ok(
                format!(
                    "{} SE-function(s) on 1..{n}{}; wrote {}\n",
                    census.count(),
                    if iso_reduce {
                        format!(" up to relabeling ({total} before reduction)")
                    } else {
                        String::new()
                    },
                    output.display()
                ),
                json!({
                    "n": n,
                    "count": census.count(),
                    "unreduced_count": total,
                    "output": output,
                }),
            ))
        }
    }
}

fn monoid_command(action: MonoidAction) -> Result<Outcome> {
    match action {
        MonoidAction::Validate { monoid } => {
            let t = io::parse_monoid(&io::read_text(&monoid)?)?;
            let (ok, what) = match t.kind() {
                MonoidKind::E => (monoid::validate_efunction(&t), "E-function"),
                MonoidKind::SE => (monoid::validate_sefunction(&t), "SE-function"),
            };
            Ok(Outcome {
                ok,
                text: format!("{}: {what}\n", if ok { "valid" } else { "invalid" }),
                value: json!({ "valid": ok, "kind": t.kind() }),
            })
        }
        MonoidAction::ToTensor { monoid, output } => {
            let t = io::parse_monoid(&io::read_text(&monoid)?)?;
            let w = monoid::monoid_to_tensor(&t)?;
            save(&output, &w)?;
            Ok(Outcome::ok(
                wrote(&output, &w),
                json!({ "output": output, "n": w.n() }),
            ))
        }
        MonoidAction::Restrict { monoid, output } => {
            let t = io::parse_monoid(&io::read_text(&monoid)?)?;
            let r = monoid::restrict_se(&t)?;
            io::write_text(&output, &io::monoid_to_string(&r))?;
            Ok(Outcome::ok(
                format!("wrote {} (n = {})\n", output.display(), r.n()),
                json!({ "output": output, "n": r.n() }),
            ))
        }
        MonoidAction::Leibnitz { n, strict, output } => {
            let t = monoid::leibnitz_table(n, strict);
            io::write_text(&output, &io::monoid_to_string(&t))?;
            Ok(Outcome::ok(
                format!("wrote {} (n = {n})\n", output.display()),
                json!({ "output": output, "n": n }),
            ))
        }
    }
}
