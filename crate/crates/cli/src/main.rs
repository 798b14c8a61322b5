use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hdgeom::ball::{self, BallQuantity};
use hdgeom::centroids::{self, CentroidRecord};
use hdgeom::diophantine;
use hdgeom::leakage::{self, LeakageReport};
use hdgeom::mc::{self, GaussMethod, McEstimate};
use hdgeom::LogScaled;

#[derive(Parser)]
#[command(name = "hdc", version, about = "Exact and log-scaled high-dimensional geometry")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, env = "HDC_FORMAT", default_value = "text")]
    format: Format,
    /// Significant digits for decimal output.
    #[arg(long, global = true, env = "HDC_DIGITS", default_value_t = 10,
          value_parser = clap::value_parser!(u32).range(1..=50))]
    digits: u32,
    /// Seed for Monte Carlo runs.
    #[arg(long, global = true, env = "HDC_SEED", default_value_t = 0)]
    seed: u64,
    /// Monte Carlo sample budget.
    #[arg(long, global = true, env = "HDC_SAMPLES", default_value_t = 1_000_000)]
    samples: u64,
    /// Largest dimension accepted by sweeps and exhaustive scans.
    #[arg(long, global = true, env = "HDC_RESOURCE_CAP", default_value_t = 2000)]
    resource_cap: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Ball volumes, sphere areas and shell fractions.
    #[command(subcommand)]
    Ball(BallCmd),
    /// The central ball between the 2^N unit balls in [-1, 1]^N.
    #[command(subcommand)]
    Leak(LeakCmd),
    /// Exact skeleton centroids of the standard simplex.
    #[command(subcommand)]
    Centroid(CentroidCmd),
    /// Monte Carlo checks against the closed forms.
    #[command(subcommand)]
    Mc(McCmd),
}

#[derive(Subcommand)]
enum BallCmd {
    /// Volume of the radius-R ball in R^N.
    Volume {
        n: u64,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
    },
    /// Area of the radius-R sphere bounding the ball in R^N.
    Area {
        n: u64,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
    },
    /// Fraction of the unit ball's volume within DELTA of the boundary.
    Shell { n: u64, delta: f64 },
    /// Table of area, volume, asymptotic form and bound for N = 1..=max-n.
    Sweep {
        #[arg(long)]
        max_n: u64,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum LeakCmd {
    /// Radius sqrt(N) - 1 of the central ball.
    Radius { n: u64 },
    /// Central-ball volume over cube volume.
    Ratio { n: u64 },
    /// First dimension in which the central ball leaves the cube.
    Threshold,
    /// Table of radius, ratio and growth envelope for N = 2..=max-n.
    Sweep {
        #[arg(long)]
        max_n: u64,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CentroidCmd {
    /// Common coordinate of the k-skeleton centroid in R^N.
    Coeff {
        n: u64,
        k: u64,
        /// Print the exact p + q*sqrt(d) form.
        #[arg(long)]
        exact: bool,
        /// Print the whole N-vector.
        #[arg(long)]
        vector: bool,
    },
    /// Pairs of intermediate skeletons sharing a centroid in R^N.
    Pairs { n: u64 },
    /// All coincidences up to max-n from the parametrised family.
    Table {
        #[arg(long)]
        max_n: u64,
    },
    /// Check the parametrised family against the exhaustive scan.
    Verify {
        #[arg(long)]
        max_n: u64,
    },
    /// Vertex, edge and area centroids of a triangle.
    #[command(allow_negative_numbers = true)]
    Triangle {
        x1: f64,
        y1: f64,
        x2: f64,
        y2: f64,
        x3: f64,
        y3: f64,
    },
}

#[derive(Subcommand)]
enum McCmd {
    /// Integral of exp(-pi |x|^2) over R^N, which is 1.
    Gauss {
        n: u64,
        /// Use the trapezoid rule instead of sampling.
        #[arg(long)]
        quadrature: bool,
    },
    /// Hit-or-miss volume of the unit ball.
    Ballvol { n: u64 },
    /// Fraction of the unit ball within DELTA of the boundary.
    Shell { n: u64, delta: f64 },
    /// Fraction of the central ball outside the cube.
    Leakfrac { n: u64 },
    /// Sampled centroid of the k-skeleton.
    Skeleton { n: u64, k: u64 },
}

struct Ctx {
    format: Format,
    digits: usize,
    seed: u64,
    samples: u64,
    cap: u64,
}

impl Ctx {
    fn capped(&self, n: u64) -> Result<()> {
        if n > self.cap {
            bail!(hdgeom::Error::ResourceLimit(format!(
                "N = {n} exceeds --resource-cap {}",
                self.cap
            )));
        }
        Ok(())
    }

    fn fixed(&self, x: f64) -> String {
        format!("{:.*}", self.digits, x)
    }
}

/// Outcome of a command: success, or a check that ran and failed.
enum Outcome {
    Ok,
    Failed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx {
        format: cli.format,
        digits: cli.digits as usize,
        seed: cli.seed,
        samples: cli.samples,
        cap: cli.resource_cap,
    };
    let result = match cli.command {
        Command::Ball(c) => ball_cmd(&ctx, c),
        Command::Leak(c) => leak_cmd(&ctx, c),
        Command::Centroid(c) => centroid_cmd(&ctx, c),
        Command::Mc(c) => mc_cmd(&ctx, c),
    };
    match result {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Print one record in the selected format. Text prints `text`; CSV prints a
/// header and one row built from the JSON fields.
fn emit(ctx: &Ctx, record: Value, text: String) -> Result<()> {
    let mut out = io::stdout().lock();
    match ctx.format {
        Format::Text => writeln!(out, "{text}")?,
        Format::Json => writeln!(out, "{}", serde_json::to_string(&record)?)?,
        Format::Csv => {
            let obj = record.as_object().context("record is not an object")?;
            let mut w = csv::Writer::from_writer(out);
            w.write_record(obj.keys())?;
            w.write_record(obj.values().map(cell))?;
            w.flush()?;
        }
    }
    Ok(())
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn emit_rows(ctx: &Ctx, header: &[&str], rows: Vec<Vec<String>>, dest: Option<PathBuf>) -> Result<()> {
    if ctx.format == Format::Json && dest.is_none() {
        let records: Vec<Value> = rows
            .iter()
            .map(|r| Value::Object(header.iter().map(|h| h.to_string()).zip(r.iter().map(|c| json!(c))).collect()))
            .collect();
        println!("{}", serde_json::to_string(&records)?);
        return Ok(());
    }
    let sink: Box<dyn Write> = match &dest {
        Some(path) => Box::new(File::create(path).with_context(|| format!("creating {}", path.display()))?),
        None => Box::new(io::stdout().lock()),
    };
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(header)?;
    let count = rows.len();
    for r in rows {
        w.write_record(&r)?;
    }
    w.flush()?;
    if let Some(path) = dest {
        eprintln!("wrote {count} rows to {}", path.display());
    }
    Ok(())
}

fn scaled_json(x: &LogScaled, digits: usize) -> Value {
    json!({ "value": x.format(digits), "ln": x.ln() })
}

fn quantity(ctx: &Ctx, q: BallQuantity, what: &str) -> Result<Outcome> {
    let value = q.value.format(ctx.digits);
    let record = json!({
        "quantity": what,
        "N": q.dimension,
        "radius": q.radius,
        "value": value,
        "ln": q.value.ln(),
    });
    emit(ctx, record, value)?;
    Ok(Outcome::Ok)
}

fn ball_cmd(ctx: &Ctx, cmd: BallCmd) -> Result<Outcome> {
    match cmd {
        BallCmd::Volume { n, radius } => quantity(ctx, BallQuantity::volume(n, radius)?, "volume"),
        BallCmd::Area { n, radius } => quantity(ctx, BallQuantity::area(n, radius)?, "area"),
        BallCmd::Shell { n, delta } => {
            let f = ball::shell_fraction(n, delta)?;
            emit(ctx, json!({ "N": n, "delta": delta, "fraction": f }), ctx.fixed(f))?;
            Ok(Outcome::Ok)
        }
        BallCmd::Sweep { max_n, emit } => {
            ctx.capped(max_n)?;
            let d = ctx.digits;
            let mut rows = Vec::new();
            for n in 1..=max_n {
                rows.push(vec![
                    n.to_string(),
                    ball::sphere_area(n)?.to_scientific(d),
                    ball::ball_volume(n)?.to_scientific(d),
                    ball::asymptotic_volume(n)?.to_scientific(d),
                    ball::prop5_bound(n)?.to_scientific(d),
                ]);
            }
            emit_rows(ctx, &["N", "omega", "Omega", "asymptotic", "prop5_bound"], rows, emit)?;
            Ok(Outcome::Ok)
        }
    }
}

fn leak_cmd(ctx: &Ctx, cmd: LeakCmd) -> Result<Outcome> {
    match cmd {
        LeakCmd::Radius { n } => {
            let r = leakage::inner_radius(n)?;
            emit(ctx, json!({ "N": n, "inner_radius": r, "leaks": r > 1.0 }), ctx.fixed(r))?;
        }
        LeakCmd::Ratio { n } => {
            let r = leakage::leakage_ratio(n)?;
            let mut record = json!({ "N": n });
            record.as_object_mut().unwrap().extend(scaled_json(&r, ctx.digits).as_object().unwrap().clone());
            emit(ctx, record, r.format(ctx.digits))?;
        }
        LeakCmd::Threshold => {
            let n = leakage::first_leak_dimension();
            emit(ctx, json!({ "first_leak_dimension": n }), n.to_string())?;
        }
        LeakCmd::Sweep { max_n, emit } => {
            ctx.capped(max_n)?;
            let d = ctx.digits;
            let mut rows = Vec::new();
            for n in 2..=max_n {
                let rep = LeakageReport::new(n)?;
                let envelope = if n >= 3 { leakage::growth_envelope(n)?.to_scientific(d) } else { String::new() };
                rows.push(vec![
                    n.to_string(),
                    format!("{:.*}", d, rep.inner_radius),
                    rep.ratio.to_scientific(d),
                    envelope,
                    rep.leaks.to_string(),
                ]);
            }
            emit_rows(ctx, &["N", "inner_radius", "ratio", "envelope", "leaks"], rows, emit)?;
        }
    }
    Ok(Outcome::Ok)
}

fn centroid_cmd(ctx: &Ctx, cmd: CentroidCmd) -> Result<Outcome> {
    match cmd {
        CentroidCmd::Coeff { n, k, exact, vector } => {
            let rec = CentroidRecord::new(n, k, ctx.digits)?;
            let exact_str = rec.coefficient.to_string();
            let shown = if exact { exact_str.clone() } else { rec.approx.clone() };
            let text = if vector { format!("({})", vec![shown.as_str(); n as usize].join(", ")) } else { shown };
            let record = json!({
                "N": n,
                "k": k,
                "exact": exact_str,
                "decimal": rec.approx,
                "rational": rec.coefficient.is_rational(),
            });
            emit(ctx, record, text)?;
        }
        CentroidCmd::Pairs { n } => {
            ctx.capped(n)?;
            let pairs = centroids::coincident_pairs(n)?;
            match ctx.format {
                Format::Json => println!("{}", serde_json::to_string(&json!({ "N": n, "pairs": pairs }))?),
                Format::Csv => {
                    let rows = pairs.iter().map(|(a, b)| vec![a.to_string(), b.to_string()]).collect();
                    emit_rows(ctx, &["k1", "k2"], rows, None)?;
                }
                Format::Text if pairs.is_empty() => println!("none"),
                Format::Text => pairs.iter().for_each(|(a, b)| println!("{a} {b}")),
            }
        }
        CentroidCmd::Table { max_n } => {
            ctx.capped(max_n)?;
            let rows = diophantine::enumerate_coincidences(max_n)?
                .into_iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.k1.to_string(),
                        r.k2.to_string(),
                        r.a.to_string(),
                        r.b.to_string(),
                        r.coordinate.to_string(),
                        r.coordinate.to_decimal(ctx.digits),
                    ]
                })
                .collect();
            let header = ["N", "k1", "k2", "a", "b", "coordinate_exact", "coordinate_decimal"];
            emit_rows(ctx, &header, rows, None)?;
        }
        CentroidCmd::Verify { max_n } => {
            ctx.capped(max_n)?;
            let report = diophantine::verify_theorem10(max_n)?;
            let triples = diophantine::triples(max_n)?;
            let ok = report.is_consistent() && triples.is_empty();
            let verdict = if ok { "PASS" } else { "FAIL" };
            let record = json!({
                "max_n": max_n,
                "rows": report.row_count(),
                "discrepancies": report.discrepancies.iter().map(|d| json!({
                    "N": d.n, "exhaustive": d.exhaustive, "parametrized": d.parametrized,
                })).collect::<Vec<_>>(),
                "triples": triples,
                "verdict": verdict,
            });
            let mut text = format!(
                "N <= {max_n}: {} coincident pairs, {} discrepancies, {} triples: {verdict}",
                report.row_count(),
                report.discrepancies.len(),
                triples.len()
            );
            for d in &report.discrepancies {
                text.push_str(&format!("\n  N={}: scan {:?}, family {:?}", d.n, d.exhaustive, d.parametrized));
            }
            emit(ctx, record, text)?;
            return Ok(if ok { Outcome::Ok } else { Outcome::Failed });
        }
        CentroidCmd::Triangle { x1, y1, x2, y2, x3, y3 } => {
            let t = centroids::triangle_centroids([x1, y1], [x2, y2], [x3, y3])?;
            let p = |q: [f64; 2]| format!("({},{})", ctx.fixed(q[0]), ctx.fixed(q[1]));
            let text = format!("vertex={} edge={} solid={}", p(t.vertex), p(t.edge), p(t.solid));
            let record = json!({
                "vertex_x": t.vertex[0], "vertex_y": t.vertex[1],
                "edge_x": t.edge[0], "edge_y": t.edge[1],
                "solid_x": t.solid[0], "solid_y": t.solid[1],
            });
            emit(ctx, record, text)?;
        }
    }
    Ok(Outcome::Ok)
}

/// A sampled estimate with its reference value and 3σ verdict.
fn report_estimate(ctx: &Ctx, label: &str, est: McEstimate, reference: Option<f64>, pass: bool) -> Result<Outcome> {
    let verdict = if pass { "PASS" } else { "FAIL" };
    let reference_text = reference.map_or_else(|| "> 0".to_string(), |r| ctx.fixed(r));
    let text = format!(
        "{label}: {} ± {} (reference {reference_text}, samples {}, seed {}) {verdict}",
        ctx.fixed(est.mean),
        ctx.fixed(est.std_error),
        est.samples,
        est.seed
    );
    let record = json!({
        "estimate": label,
        "mean": est.mean,
        "std_error": est.std_error,
        "samples": est.samples,
        "seed": est.seed,
        "reference": reference,
        "verdict": verdict,
    });
    emit(ctx, record, text)?;
    Ok(if pass { Outcome::Ok } else { Outcome::Failed })
}

fn mc_cmd(ctx: &Ctx, cmd: McCmd) -> Result<Outcome> {
    let (s, seed) = (ctx.samples, ctx.seed);
    match cmd {
        McCmd::Gauss { n, quadrature } => {
            let method = if quadrature { GaussMethod::Quadrature } else { GaussMethod::MonteCarlo };
            let est = mc::gaussian_norm_check(n, method, s, seed)?;
            let pass = if quadrature { (est.mean - 1.0).abs() < 1e-6 } else { est.within_sigma(1.0, 3.0) };
            report_estimate(ctx, "gauss", est, Some(1.0), pass)
        }
        McCmd::Ballvol { n } => {
            let est = mc::mc_ball_volume(n, s, seed)?;
            let exact = ball::ball_volume(n)?.to_f64();
            report_estimate(ctx, "ballvol", est, Some(exact), est.within_sigma(exact, 3.0))
        }
        McCmd::Shell { n, delta } => {
            let est = mc::mc_shell_fraction(n, delta, s, seed)?;
            let exact = ball::shell_fraction(n, delta)?;
            report_estimate(ctx, "shell", est, Some(exact), est.within_sigma(exact, 3.0))
        }
        McCmd::Leakfrac { n } => {
            let est = mc::mc_leak_fraction(n, s, seed)?;
            if n >= 5 {
                report_estimate(ctx, "leakfrac", est, None, est.lower_bound(mc::Z_99) > 0.0)
            } else {
                report_estimate(ctx, "leakfrac", est, Some(0.0), est.mean == 0.0)
            }
        }
        McCmd::Skeleton { n, k } => {
            let ests = mc::mc_skeleton_centroid(n, k, s, seed)?;
            let exact = centroids::centroid_coefficient(n, k)?.to_f64();
            let pass = ests.iter().all(|e| e.within_sigma(exact, 3.0));
            let verdict = if pass { "PASS" } else { "FAIL" };
            let mut text = String::new();
            for (i, e) in ests.iter().enumerate() {
                text.push_str(&format!("x{}: {} ± {}\n", i + 1, ctx.fixed(e.mean), ctx.fixed(e.std_error)));
            }
            text.push_str(&format!(
                "reference {} (samples {}, seed {seed}) {verdict}",
                ctx.fixed(exact),
                s
            ));
            let record = json!({
                "N": n,
                "k": k,
                "mean": ests.iter().map(|e| e.mean).collect::<Vec<_>>(),
                "std_error": ests.iter().map(|e| e.std_error).collect::<Vec<_>>(),
                "samples": s,
                "seed": seed,
                "reference": exact,
                "verdict": verdict,
            });
            emit(ctx, record, text)?;
            Ok(if pass { Outcome::Ok } else { Outcome::Failed })
        }
    }
}
