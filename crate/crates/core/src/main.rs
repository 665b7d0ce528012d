//! Command-line front end: loads `.mat`/`.trunc` matroids and `.col`
//! colorings, runs the library's checks, and prints JSON or plain text.

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use matroidal::analysis::{check_aggregate_inequality, dichotomy_report, find_line_cover};
use matroidal::coloring::{
    check_conditions, count_monochromatic_blue_hyperplanes, is_kl_degenerate, Coloring,
};
use matroidal::constructions::{
    fig1_configuration, graphic_construction, line_adjoined_construction,
    parallel_copies_construction, random_instance, ColoredInstance,
};
use matroidal::degeneracy::{is_k_degenerate, optimal_stratification};
use matroidal::flats::{enumerate_flats, incidence_stats};
use matroidal::io::{load_coloring, load_matroid, write_matroid};
use matroidal::rational::parse_rational;
use matroidal::suite::run_suites;
use matroidal::truncation::k_fold_truncation;
use matroidal::{RankOracle, Subset};

#[derive(Parser)]
#[command(name = "matroidal", version, about = "exact computation with real-representable matroids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the flats of one rank.
    Flats {
        file: PathBuf,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        json: bool,
    },
    /// Exhaustive incidence statistics as JSON.
    Stats { file: PathBuf },
    /// Search for a k-degeneracy certificate for a subset (default: all).
    Degenerate {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        subset: Option<String>,
    },
    /// Optimal stratification as JSON.
    Stratify {
        file: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Append a principal truncation step and write a `.trunc` file.
    Truncate {
        file: PathBuf,
        #[arg(long)]
        flat: String,
        #[arg(long, conflicts_with = "complete")]
        folds: Option<usize>,
        #[arg(long)]
        complete: bool,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Check the coloring conditions (C1)-(C3).
    ColorCheck {
        file: PathBuf,
        colfile: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        json: bool,
    },
    /// Search for a chain-degeneracy certificate of the colored instance.
    KlDegenerate { file: PathBuf, colfile: PathBuf },
    /// Count hyperplanes disjoint from the red set.
    MonoBlueCount { file: PathBuf, colfile: PathBuf },
    /// Generate a named instance, writing PREFIX.mat and PREFIX.col.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
    /// Search for a small set of lines covering every hyperplane.
    Cover {
        file: PathBuf,
        #[arg(long)]
        max_lines: usize,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate the aggregate hyperplane-excess inequality.
    Aggregate {
        file: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Report both branches of the main dichotomy.
    Dichotomy {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        threshold: String,
    },
    /// Run the property suites and write a JSON report.
    Verify {
        #[arg(default_value = "all")]
        area: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GenFamily {
    /// The 7-point triangle/centroid/midpoints configuration.
    Fig1 {
        #[arg(short, long)]
        out: PathBuf,
    },
    /// The complete-graph-plus-point family.
    Graphic {
        #[arg(long)]
        k: usize,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Parallel planar copies with directions at infinity.
    Parallel {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: usize,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Replace each red point of a base instance with an m-point line.
    Adjoin {
        basemat: PathBuf,
        basecol: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// A seeded random simple spanning instance.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        bound: i64,
        #[arg(short, long)]
        out: PathBuf,
    },
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}

fn json<T: serde::Serialize>(value: &T) -> matroidal::Result<String> {
    serde_json::to_string_pretty(value)
        .map_err(|e| matroidal::Error::InvalidInput(format!("serialization failed: {e}")))
}

fn run() -> matroidal::Result<()> {
    match Cli::parse().command {
        Command::Flats { file, rank, json: as_json } => {
            let m = load_matroid(&file)?;
            let flats = enumerate_flats(&*m.oracle, rank)?;
            if as_json {
                println!("{}", json(&flats)?);
            } else {
                for f in flats {
                    println!("{}", f.members);
                }
            }
        }
        Command::Stats { file } => {
            let m = load_matroid(&file)?;
            println!("{}", json(&incidence_stats(&*m.oracle)?)?);
        }
        Command::Degenerate { file, k, subset } => {
            let m = load_matroid(&file)?;
            let x = match subset {
                Some(list) => Subset::parse(&list).map_err(matroidal::Error::Parse)?,
                None => m.oracle.ground(),
            };
            match is_k_degenerate(&*m.oracle, x, k)? {
                Some(cert) => println!("{}", json(&cert)?),
                None => println!("\"none\""),
            }
        }
        Command::Stratify { file, k } => {
            let m = load_matroid(&file)?;
            println!("{}", json(&optimal_stratification(&*m.oracle, k)?)?);
        }
        Command::Truncate { file, flat, folds, complete: _, out } => {
            let m = load_matroid(&file)?;
            let f = Subset::parse(&flat).map_err(matroidal::Error::Parse)?;
            let folds = folds.unwrap_or_else(|| m.oracle.rank(f).saturating_sub(1));
            k_fold_truncation(m.oracle.clone(), f, folds)?; // validate
            let mut steps = m.steps.clone();
            steps.push((f, folds));
            std::fs::write(&out, write_matroid(&m.base, &steps))?;
            println!("wrote {}", out.display());
        }
        Command::ColorCheck { file, colfile, k, json: as_json } => {
            let m = load_matroid(&file)?;
            let col = load_coloring(&colfile, m.size())?;
            let rep = check_conditions(&*m.oracle, &col, k)?;
            if as_json {
                println!("{}", json(&rep)?);
            } else {
                println!("C1 {}", if rep.c1 { "pass" } else { "FAIL" });
                println!("C2 {}", if rep.c2 { "pass" } else { "FAIL" });
                println!("C3 {}", if rep.c3 { "pass" } else { "FAIL" });
                println!("overall {}", if rep.all_pass() { "pass" } else { "FAIL" });
            }
        }
        Command::KlDegenerate { file, colfile } => {
            let m = load_matroid(&file)?;
            let col = load_coloring(&colfile, m.size())?;
            let k = m.oracle.full_rank() - 1;
            match is_kl_degenerate(&m.oracle, &col, k)? {
                Some(cert) => println!("{}", json(&cert)?),
                None => println!("\"none\""),
            }
        }
        Command::MonoBlueCount { file, colfile } => {
            let m = load_matroid(&file)?;
            let col = load_coloring(&colfile, m.size())?;
            println!("{}", count_monochromatic_blue_hyperplanes(&*m.oracle, &col)?);
        }
        Command::Gen { family } => generate(family)?,
        Command::Cover { file, max_lines, json: as_json } => {
            let m = load_matroid(&file)?;
            match find_line_cover(&*m.oracle, max_lines)? {
                Some(cover) if as_json => println!("{}", json(&cover)?),
                Some(cover) => {
                    for l in cover.lines {
                        println!("{l}");
                    }
                }
                None => println!("\"none\""),
            }
        }
        Command::Aggregate { file, k } => {
            let m = load_matroid(&file)?;
            println!("{}", json(&check_aggregate_inequality(&*m.oracle, k)?)?);
        }
        Command::Dichotomy { file, k, threshold } => {
            let m = load_matroid(&file)?;
            if m.oracle.full_rank() != k + 1 {
                return Err(matroidal::Error::InvalidInput(format!(
                    "rank {} but k = {k}",
                    m.oracle.full_rank()
                )));
            }
            let q = parse_rational(&threshold)?;
            println!("{}", json(&dichotomy_report(&m.oracle, &q, k - 1)?)?);
        }
        Command::Verify { area, seed, trials, report } => {
            let reports = run_suites(&area, seed, trials)?;
            let rendered = json(&reports)?;
            if let Some(path) = report {
                std::fs::write(&path, &rendered)?;
            }
            let mut ok = true;
            for r in &reports {
                println!("{} {} ({} cases)", r.name, if r.passed { "pass" } else { "FAIL" }, r.cases);
                ok &= r.passed;
            }
            if !ok {
                std::process::exit(2);
            }
        }
    }
    Ok(())
}

fn write_instance(prefix: &std::path::Path, inst: &ColoredInstance) -> matroidal::Result<()> {
    std::fs::write(prefix.with_extension("mat"), inst.matroid.write_mat())?;
    std::fs::write(prefix.with_extension("col"), inst.coloring.write())?;
    println!("wrote {} ({})", prefix.with_extension("mat").display(), inst.provenance);
    Ok(())
}

fn generate(family: GenFamily) -> matroidal::Result<()> {
    match family {
        GenFamily::Fig1 { out } => write_instance(&out, &fig1_configuration())?,
        GenFamily::Graphic { k, out } => write_instance(&out, &graphic_construction(k)?)?,
        GenFamily::Parallel { k, t, out } => {
            write_instance(&out, &parallel_copies_construction(k, t)?)?
        }
        GenFamily::Adjoin { basemat, basecol, m, k, out } => {
            // the base of an adjoined family must be a plain coordinate file
            let matroid = matroidal::LinearMatroid::parse_mat(&std::fs::read_to_string(&basemat)?)?;
            let coloring = load_coloring(&basecol, matroid.size())?;
            let base_inst = ColoredInstance {
                matroid,
                coloring,
                claimed_k: k,
                provenance: "loaded base".into(),
            };
            let (matroid, lines) = line_adjoined_construction(&base_inst, m)?;
            let n = matroid.size();
            std::fs::write(out.with_extension("mat"), matroid.write_mat())?;
            std::fs::write(out.with_extension("col"), Coloring::all_blue(n).write())?;
            std::fs::write(out.with_extension("cover.json"), json(&lines)?)?;
            println!("wrote {}", out.with_extension("mat").display());
        }
        GenFamily::Random { n, rank, seed, bound, out } => {
            let matroid = random_instance(n, rank, seed, bound)?;
            std::fs::write(out.with_extension("mat"), matroid.write_mat())?;
            std::fs::write(out.with_extension("col"), Coloring::all_blue(n).write())?;
            println!("wrote {}", out.with_extension("mat").display());
        }
    }
    Ok(())
}
