//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 for domain errors (and failed validation),
//! 2 for usage errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::crochet::{plan_rows, render_pattern, MagicCircle, PatternMode};
use crate::diffgeo::{coral_curvature_paper, curvature_report, curvature_table, CurvatureReport};
use crate::mesh::{tessellate, write_obj, write_ply};
use crate::oracle::{validate_all, RandomSamples, ValidationConfig};
use crate::surface::{DomainPoint, SurfaceFamily, SurfaceKind};
use crate::{Error, Result};

#[derive(Debug, Parser)]
#[command(
    name = "knitcoral",
    version,
    about = "Curvature, crochet plans and meshes for coral-like surfaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SurfaceArg {
    Coral,
    Lettuce,
    Paraboloid,
}

impl From<SurfaceArg> for SurfaceKind {
    fn from(s: SurfaceArg) -> Self {
        match s {
            SurfaceArg::Coral => SurfaceKind::NCoral,
            SurfaceArg::Lettuce => SurfaceKind::Lettuce,
            SurfaceArg::Paraboloid => SurfaceKind::HyperbolicParaboloid,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Paper,
    Forms,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Even,
    Block,
}

impl From<ModeArg> for PatternMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Even => PatternMode::Even,
            ModeArg::Block => PatternMode::Block,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeshFormat {
    Obj,
    Ply,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Curvature report at one point.
    Curvature {
        #[arg(long, value_enum, default_value = "coral")]
        surface: SurfaceArg,
        #[arg(short = 'n', default_value_t = 4)]
        n: u32,
        #[arg(short = 'u', allow_hyphen_values = true)]
        u: f64,
        /// Angle in radians; `pi/2`, `3pi/4`, `2*pi` are accepted.
        #[arg(short = 'v', value_parser = parse_angle, allow_hyphen_values = true)]
        v: f64,
        #[arg(long, value_enum, default_value = "both")]
        which: Which,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Grid of n-coral curvatures (rows u, columns v).
    Table {
        #[arg(short = 'n', default_value_t = 4)]
        n: u32,
        #[arg(long = "u", value_delimiter = ',', num_args = 1.., default_value = "0.5,1,1.5,2")]
        us: Vec<f64>,
        #[arg(long = "v", value_delimiter = ',', num_args = 1.., value_parser = parse_angle, default_value = "2pi,pi/2")]
        vs: Vec<f64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Full precision instead of two rounded decimals.
        #[arg(long)]
        precise: bool,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Chain counts per row (r, l, chains).
    Chains {
        #[arg(long, default_value_t = 14)]
        initial: u64,
        #[arg(long, default_value_t = 4)]
        rows: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Row-by-row knitting instructions.
    Pattern {
        #[arg(long, default_value_t = 14)]
        initial: u64,
        #[arg(long, default_value_t = 4)]
        rows: u32,
        #[arg(long, value_enum, default_value = "block")]
        mode: ModeArg,
        #[arg(long, default_value_t = 6)]
        magic: u32,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Curvature-coloured triangle mesh.
    Mesh {
        #[arg(long, value_enum, default_value = "coral")]
        surface: SurfaceArg,
        #[arg(short = 'n', default_value_t = 4)]
        n: u32,
        #[arg(long, default_value_t = 64)]
        nu: usize,
        #[arg(long, default_value_t = 256)]
        nv: usize,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        u_min: f64,
        #[arg(long, default_value_t = 2.0, allow_hyphen_values = true)]
        u_max: f64,
        #[arg(long, value_parser = parse_angle, default_value = "0", allow_hyphen_values = true)]
        v_min: f64,
        #[arg(long, value_parser = parse_angle, default_value = "2pi", allow_hyphen_values = true)]
        v_max: f64,
        /// Weld the angular seam. Defaults to on for coral and paraboloid.
        #[arg(long)]
        wrap: Option<bool>,
        /// Output format; inferred from the file extension when omitted.
        #[arg(long, value_enum)]
        format: Option<MeshFormat>,
        #[arg(short = 'o', long)]
        output: PathBuf,
    },
    /// Run the numerical cross-checks.
    Validate {
        #[arg(long)]
        json: bool,
        #[arg(short = 'n', value_delimiter = ',', num_args = 1.., default_value = "2,3,4,5")]
        n: Vec<u32>,
        #[arg(long, default_value_t = 21)]
        grid: usize,
        /// Add this many seeded random points to the pointwise checks.
        #[arg(long, requires = "seed")]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
}

/// Parses a real number or a multiple of π: `1.5`, `pi`, `-pi/4`, `3pi/2`,
/// `2*pi`, `π/2`.
pub fn parse_angle(s: &str) -> std::result::Result<f64, String> {
    let t = s
        .trim()
        .to_ascii_lowercase()
        .replace('π', "pi")
        .replace(' ', "");
    if let Ok(x) = t.parse::<f64>() {
        return Ok(x);
    }
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a, Some(b)),
        None => (t.as_str(), None),
    };
    let coeff_str = num
        .strip_suffix("pi")
        .ok_or_else(|| format!("'{s}' is not a number or a multiple of pi"))?;
    let coeff_str = coeff_str.strip_suffix('*').unwrap_or(coeff_str);
    let coeff = match coeff_str {
        "" | "+" => 1.0,
        "-" => -1.0,
        c => c
            .parse::<f64>()
            .map_err(|_| format!("bad coefficient in '{s}'"))?,
    };
    let den = match den {
        Some(d) => d
            .parse::<f64>()
            .map_err(|_| format!("bad denominator in '{s}'"))?,
        None => 1.0,
    };
    if den == 0.0 {
        return Err(format!("zero denominator in '{s}'"));
    }
    Ok(coeff * std::f64::consts::PI / den)
}

fn emit(out: &mut dyn Write, output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::io(path, e)),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Error::io("<stdout>", e)),
    }
}

fn report_text(r: &CurvatureReport, which: Which) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "surface: {}", r.surface);
    let _ = writeln!(s, "point: u={} v={}", r.point.u, r.point.v);
    if !r.in_canonical_domain {
        let _ = writeln!(
            s,
            "note: outside the canonical domain u in [0,2], v in [0,2pi]"
        );
    }
    let f = &r.forms;
    let _ = writeln!(s, "first form: E={} F={} G={}", f.e, f.f, f.g);
    let _ = writeln!(s, "second form: L={} M={} N={}", f.l, f.m, f.n);
    if let Some(a) = f.a {
        let _ = writeln!(s, "A: {a}");
    }
    let w = &r.weingarten;
    let _ = writeln!(
        s,
        "weingarten: [[{}, {}], [{}, {}]]",
        w.w11, w.w12, w.w21, w.w22
    );
    if matches!(which, Which::Forms | Which::Both) {
        let _ = writeln!(s, "K_forms: {}", r.k_forms);
    }
    if matches!(which, Which::Paper | Which::Both) {
        match r.k_paper {
            Some(k) => {
                let _ = writeln!(s, "K_paper: {k}");
            }
            None => {
                let _ = writeln!(s, "K_paper: n/a (closed form exists for the coral only)");
            }
        }
    }
    let _ = writeln!(s, "H: {}", r.h);
    let _ = writeln!(s, "k1: {}", r.k1);
    let _ = writeln!(s, "k2: {}", r.k2);
    if which == Which::Both {
        if let (Some(d), Some(ratio)) = (r.discrepancy, r.paper_to_forms_ratio()) {
            let _ = writeln!(s, "K_paper / K_forms: {ratio} (equals A)");
            let _ = writeln!(s, "K_paper - A*K_forms: {d:e}");
        }
    }
    s
}

fn curvature_cmd(
    surface: SurfaceArg,
    n: u32,
    q: DomainPoint,
    which: Which,
    format: Format,
) -> Result<String> {
    let s = SurfaceFamily::new(surface.into(), n)?;
    if which == Which::Paper {
        // The closed form stays finite on the axis, so no report is needed.
        if s.kind() != SurfaceKind::NCoral {
            return Err(Error::invalid(
                "the K_paper closed form exists for the coral only",
            ));
        }
        let k = coral_curvature_paper(n, q);
        return Ok(match format {
            Format::Json => format!(
                "{}\n",
                serde_json::json!({ "u": q.u, "v": q.v, "K_paper": k })
            ),
            Format::Csv => format!("u,v,K_paper\n{},{},{}\n", q.u, q.v, k),
            Format::Text => format!("K_paper: {k}\n"),
        });
    }
    let r = curvature_report(&s, q)?;
    Ok(match format {
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&r).expect("report serializes")
        ),
        Format::Csv => {
            let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
            format!(
                "u,v,K_paper,K_forms,H,k1,k2,A\n{},{},{},{},{},{},{},{}\n",
                q.u,
                q.v,
                opt(r.k_paper),
                r.k_forms,
                r.h,
                r.k1,
                r.k2,
                opt(r.forms.a)
            )
        }
        Format::Text => report_text(&r, which),
    })
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Curvature {
            surface,
            n,
            u,
            v,
            which,
            format,
        } => {
            let text = curvature_cmd(surface, n, DomainPoint::new(u, v), which, format)?;
            emit(out, None, &text)?;
        }
        Command::Table {
            n,
            us,
            vs,
            format,
            precise,
            output,
        } => {
            let t = curvature_table(n, &us, &vs)?;
            let text = match format {
                Format::Csv => t.to_csv(!precise),
                Format::Json => format!(
                    "{}\n",
                    serde_json::to_string_pretty(&t).expect("table serializes")
                ),
                Format::Text => t.to_text(!precise),
            };
            emit(out, output.as_deref(), &text)?;
        }
        Command::Chains {
            initial,
            rows,
            format,
            output,
        } => {
            let plan = plan_rows(initial, rows)?;
            let text = match format {
                Format::Csv => plan.to_csv(),
                Format::Json => format!(
                    "{}\n",
                    serde_json::to_string_pretty(&plan).expect("plan serializes")
                ),
                Format::Text => plan.to_text(),
            };
            emit(out, output.as_deref(), &text)?;
        }
        Command::Pattern {
            initial,
            rows,
            mode,
            magic,
            output,
        } => {
            let plan = plan_rows(initial, rows)?.with_magic_circle(MagicCircle::new(magic)?);
            let text = render_pattern(&plan, mode.into())?;
            emit(out, output.as_deref(), &text)?;
        }
        Command::Mesh {
            surface,
            n,
            nu,
            nv,
            u_min,
            u_max,
            v_min,
            v_max,
            wrap,
            format,
            output,
        } => {
            let s = SurfaceFamily::new(surface.into(), n)?;
            let wrap = wrap.unwrap_or_else(|| s.is_radial());
            let format = match format {
                Some(f) => f,
                None => match output.extension().and_then(|e| e.to_str()) {
                    Some(e) if e.eq_ignore_ascii_case("ply") => MeshFormat::Ply,
                    Some(e) if e.eq_ignore_ascii_case("obj") => MeshFormat::Obj,
                    _ => {
                        return Err(Error::invalid(
                            "cannot infer mesh format from the output name; pass --format",
                        ))
                    }
                },
            };
            let mesh = tessellate(&s, (u_min, u_max), (v_min, v_max), nu, nv, wrap)?;
            match format {
                MeshFormat::Obj => write_obj(&mesh, &output)?,
                MeshFormat::Ply => write_ply(&mesh, &output)?,
            }
            let (k_lo, k_hi) = mesh.k_range();
            let text = format!(
                "wrote {} vertices, {} triangles to {} (K in [{k_lo:.6}, {k_hi:.6}])\n",
                mesh.vertex_count(),
                mesh.triangle_count(),
                output.display()
            );
            emit(out, None, &text)?;
        }
        Command::Validate {
            json,
            n,
            grid,
            samples,
            seed,
            output,
        } => {
            let cfg = ValidationConfig {
                n_list: n,
                grid,
                random: samples
                    .zip(seed)
                    .map(|(count, seed)| RandomSamples { seed, count }),
                ..ValidationConfig::default()
            };
            let report = validate_all(&cfg)?;
            let text = if json {
                format!("{}\n", report.to_json())
            } else {
                report.to_text()
            };
            emit(out, output.as_deref(), &text)?;
            return Ok(if report.passed { 0 } else { 1 });
        }
    }
    Ok(0)
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}
