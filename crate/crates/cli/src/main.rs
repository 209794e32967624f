//! `rdyn`: renders and numerical experiments in holomorphic dynamics.

mod commands;
mod parse;

use clap::{Parser, Subcommand, ValueEnum};
use rdyn::DynError;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "rdyn", version, about = "Holomorphic dynamics: renders and numerical experiments")]
pub struct Cli {
    /// Worker threads (0 = all cores). Never changes the output.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Escape,
    Inverse,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ColoringArg {
    Binary,
    Bands,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrientationArg {
    /// c decreases upward (smallest c on the top row)
    Down,
    /// c increases upward
    Up,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SetArg {
    /// Black pixels
    Black,
    /// Escaped pixels next to a black pixel
    Boundary,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Julia set of z^2 + c (PGM/PPM)
    Julia {
        #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
        c: rdyn::Complex64,
        #[arg(long, value_parser = parse::view, allow_hyphen_values = true, default_value = "-2,2,-2,2")]
        view: [f64; 4],
        #[arg(long, value_parser = parse::size, default_value = "512x512")]
        size: (usize, usize),
        /// Escape budget, or number of plotted points for inverse iteration
        /// (defaults 1000 and 1000000)
        #[arg(long)]
        iters: Option<usize>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Escape)]
        method: Method,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = ColoringArg::Binary)]
        coloring: ColoringArg,
    },
    /// Mandelbrot set (PGM/PPM)
    Mandel {
        #[arg(long, value_parser = parse::view, allow_hyphen_values = true, default_value = "-2.5,1,-1.5,1.5")]
        view: [f64; 4],
        #[arg(long, value_parser = parse::size, default_value = "700x600")]
        size: (usize, usize),
        #[arg(long, default_value_t = rdyn::render::mandel::DEFAULT_MANDEL_ITERS)]
        iters: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = ColoringArg::Binary)]
        coloring: ColoringArg,
    },
    /// Real bifurcation diagram (PGM/PPM image, or CSV rows "c,x")
    Bifurcate {
        #[arg(long, value_parser = parse::range, allow_hyphen_values = true, default_value = "-2,0.25")]
        range: (f64, f64),
        #[arg(long, value_parser = parse::size, default_value = "600x800")]
        size: (usize, usize),
        #[arg(long, default_value_t = 2000)]
        transient: usize,
        #[arg(long, default_value_t = 300)]
        count: usize,
        #[arg(long)]
        out: PathBuf,
        /// Horizontal range of orbit values
        #[arg(long, value_parser = parse::range, allow_hyphen_values = true, default_value = "-2,2")]
        xrange: (f64, f64),
        #[arg(long, value_enum, default_value_t = OrientationArg::Down)]
        orientation: OrientationArg,
    },
    /// Superstable period-doubling cascade (CSV "k,s_k,delta_k")
    Cascade {
        #[arg(long, default_value_t = 12)]
        kmax: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Windows of certified attracting period on a real range (CSV "c_lo,c_hi,period")
    Windows {
        #[arg(long, value_parser = parse::range, allow_hyphen_values = true)]
        range: (f64, f64),
        #[arg(long)]
        step: f64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
    },
    /// Hyperbolicity certificate of z^2 + c
    Classify {
        #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
        c: rdyn::Complex64,
        #[arg(long, default_value_t = rdyn::orbit::DEFAULT_BUDGET)]
        budget: usize,
    },
    /// All cycles of z^2 + c up to a period
    Cycles {
        #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
        c: rdyn::Complex64,
        #[arg(long)]
        maxperiod: usize,
    },
    /// External ray of z^2 + c (CSV "t,G,re,im")
    Ray {
        #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
        c: rdyn::Complex64,
        #[arg(long)]
        angle: rdyn::rays::Angle,
        #[arg(long, default_value_t = 1e-6)]
        gmin: f64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = rdyn::rays::trace::DEFAULT_STEPS_PER_HALVING)]
        steps: usize,
    },
    /// Yoccoz puzzle pieces (CSV "depth,label,parent,diameter")
    Puzzle {
        #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
        c: rdyn::Complex64,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        out: PathBuf,
        /// Rays landing at the alpha fixed point, closed under doubling
        #[arg(long, value_delimiter = ',', default_value = "1/7,2/7,4/7")]
        angles: Vec<rdyn::rays::Angle>,
        /// Point whose nest of pieces is reported
        #[arg(long, value_parser = parse::complex, allow_hyphen_values = true, default_value = "0,0")]
        z0: rdyn::Complex64,
    },
    /// Lattès map checks for the lattice Z + tau Z
    Lattes {
        #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
        tau: rdyn::Complex64,
        #[arg(long, default_value_t = 2)]
        n: u32,
        /// Also run the repelling-point density probe
        #[arg(long)]
        probe: bool,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        grid: usize,
        #[arg(long, default_value_t = 4)]
        maxperiod: usize,
    },
    /// Box-counting dimension of a PGM/PPM
    Dimension {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_parser = parse::scales, default_value = "4,8,16,32")]
        scales: parse::Scales,
        #[arg(long, value_enum, default_value_t = SetArg::Black)]
        set: SetArg,
    },
    /// The z^2 - 1.99999 experiment
    Challenge {
        #[arg(long, default_value_t = rdyn::quad::challenge::CHALLENGE_BUDGET)]
        budget: usize,
        #[arg(long, default_value_t = rdyn::quad::challenge::CHALLENGE_C, allow_hyphen_values = true)]
        c: f64,
    },
    /// Mandelbrot set in log coordinates around c0 (PGM/PPM)
    Logview {
        #[arg(long, value_parser = parse::complex, allow_hyphen_values = true, default_value = "-0.39054087,-0.5867879")]
        c0: rdyn::Complex64,
        /// u0,u1,v0,v1 with c = c0 + exp(u + iv)
        #[arg(long, value_parser = parse::view, allow_hyphen_values = true, default_value = "-12,0,-3.141592653589793,3.141592653589793")]
        view: [f64; 4],
        #[arg(long, value_parser = parse::size, default_value = "1200x300")]
        size: (usize, usize),
        #[arg(long, default_value_t = rdyn::render::mandel::DEFAULT_MANDEL_ITERS)]
        iters: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = ColoringArg::Binary)]
        coloring: ColoringArg,
    },
    /// Monte Carlo estimate of the mean squared spherical derivative of f^n
    Expansion {
        #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
        c: rdyn::Complex64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 10_000_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// 2 for bad input, 3 for numerical failure.
fn exit_code(e: &DynError) -> u8 {
    match e {
        DynError::InvalidArgument(_) | DynError::Io { .. } | DynError::EquationTooLarge { .. } => 2,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let threads = cli.threads;
    match rdyn::par::with_threads(threads, move || commands::run(cli.command)) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
