//! Flags, the optional `key = value` file, and their resolution into a
//! [`RunConfig`].

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pascal_rays::Complex64;
use pascal_rays::attractor::Window;

use crate::CliError;

#[derive(Parser, Debug)]
#[command(name = "pascal-rays", version, about = "Pascal-ray polynomial families and the zero attractor of T_n(x, y0)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Print T_0 ..= T_n in canonical form
    Terms,
    /// Cross-check the sequence generators, contour integrals and residue sums
    Verify,
    /// Run the Joukowski chain on a cubic (or the family cubic at x)
    Solve,
    /// Zeros of T_n(x, y0) as CSV
    Roots,
    /// Trace the tie locus |t1| = |t2| as CSV
    Attractor,
    /// Zero-to-curve distances for a list of n as JSON
    Report,
    /// SVG of the traced curve and the zeros of T_n
    Plot,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Svg,
    Text,
}

#[derive(Args, Debug, Default, Clone)]
pub struct Flags {
    /// File of `key = value` lines; flags given on the command line win
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub r: Option<i64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub q: Option<i64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub p: Option<i64>,
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Comma-separated degrees, e.g. 50,100,200,400
    #[arg(long, global = true)]
    pub n_list: Option<String>,
    /// Complex literal: 1, -0.5, 2i, 1+2i
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub y0: Option<String>,
    /// re_min,re_max,im_min,im_max
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub window: Option<String>,
    /// Nodes per axis: 256 or 256x128
    #[arg(long, global = true)]
    pub grid: Option<String>,
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Write here instead of standard output
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true)]
    pub format: Option<Format>,
    /// Monic cubic coefficients c2,c1,c0 for `solve`
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub cubic: Option<String>,
    /// x for the family cubic in `solve`
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub x: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub r: i64,
    pub q: i64,
    pub p: i64,
    pub n: usize,
    pub n_list: Vec<usize>,
    pub y0: Complex64,
    pub window: Window,
    pub grid: (usize, usize),
    pub tol: f64,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub cubic: Option<[Complex64; 3]>,
    pub x: Complex64,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Parses `a`, `bi`, `a+bi`, `a-bi` (with `i` alone meaning 1).
pub fn parse_complex(s: &str) -> Result<Complex64, CliError> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || usage(format!("not a complex number: {s:?}"));
    let num = |v: &str| v.parse::<f64>().map_err(|_| bad());
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex64::new(num(&t)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let imag = |v: &str| match v {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => num(v),
    };
    match split {
        Some(k) => Ok(Complex64::new(num(&body[..k])?, imag(&body[k..])?)),
        None => Ok(Complex64::new(0.0, imag(body)?)),
    }
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, CliError> {
    s.split(',')
        .map(|v| v.trim().parse::<T>().map_err(|_| usage(format!("bad {what}: {s:?}"))))
        .collect()
}

pub fn parse_window(s: &str) -> Result<Window, CliError> {
    let v: Vec<f64> = parse_list(s, "window")?;
    if v.len() != 4 {
        return Err(usage(format!("window needs re_min,re_max,im_min,im_max, got {s:?}")));
    }
    let w = Window::new(v[0], v[1], v[2], v[3]);
    if w.is_empty() {
        return Err(usage(format!("window {s:?} is empty")));
    }
    Ok(w)
}

pub fn parse_grid(s: &str) -> Result<(usize, usize), CliError> {
    let parts: Vec<&str> = s.split(['x', ',']).collect();
    let v: Vec<usize> = parts
        .iter()
        .map(|p| p.trim().parse().map_err(|_| usage(format!("bad grid: {s:?}"))))
        .collect::<Result<_, _>>()?;
    match v[..] {
        [g] => Ok((g, g)),
        [a, b] => Ok((a, b)),
        _ => Err(usage(format!("bad grid: {s:?}"))),
    }
}

/// Reads `key = value` lines into flags, `#` starting a comment.
pub fn parse_config_file(text: &str) -> Result<Flags, CliError> {
    let mut f = Flags::default();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| usage(format!("config line {}: expected key = value", ln + 1)))?;
        let (k, v) = (k.trim().replace('_', "-"), v.trim().to_string());
        let int = |v: &str| v.parse::<i64>().map_err(|_| usage(format!("config line {}: bad integer {v:?}", ln + 1)));
        match k.as_str() {
            "r" => f.r = Some(int(&v)?),
            "q" => f.q = Some(int(&v)?),
            "p" => f.p = Some(int(&v)?),
            "n" => f.n = Some(int(&v)?.try_into().map_err(|_| usage(format!("config line {}: n must be >= 0", ln + 1)))?),
            "n-list" => f.n_list = Some(v),
            "y0" => f.y0 = Some(v),
            "window" => f.window = Some(v),
            "grid" => f.grid = Some(v),
            "tol" => f.tol = Some(v.parse().map_err(|_| usage(format!("config line {}: bad tol {v:?}", ln + 1)))?),
            "output" => f.output = Some(PathBuf::from(v)),
            "format" => {
                f.format = Some(Format::from_str(&v, true).map_err(|_| usage(format!("config line {}: bad format {v:?}", ln + 1)))?)
            }
            "cubic" => f.cubic = Some(v),
            "x" => f.x = Some(v),
            _ => return Err(usage(format!("config line {}: unknown key {k:?}", ln + 1))),
        }
    }
    Ok(f)
}

impl Flags {
    /// `self` where set, otherwise `base`.
    pub fn over(self, base: Flags) -> Flags {
        Flags {
            config: self.config.or(base.config),
            r: self.r.or(base.r),
            q: self.q.or(base.q),
            p: self.p.or(base.p),
            n: self.n.or(base.n),
            n_list: self.n_list.or(base.n_list),
            y0: self.y0.or(base.y0),
            window: self.window.or(base.window),
            grid: self.grid.or(base.grid),
            tol: self.tol.or(base.tol),
            output: self.output.or(base.output),
            format: self.format.or(base.format),
            cubic: self.cubic.or(base.cubic),
            x: self.x.or(base.x),
        }
    }
}

fn default_n(c: Command) -> usize {
    match c {
        Command::Terms => 10,
        Command::Plot => 200,
        _ => 50,
    }
}

fn allowed_formats(c: Command) -> &'static [Format] {
    match c {
        Command::Terms => &[Format::Text],
        Command::Verify => &[Format::Text, Format::Json],
        Command::Solve | Command::Report => &[Format::Json],
        Command::Roots | Command::Attractor => &[Format::Csv, Format::Json],
        Command::Plot => &[Format::Svg],
    }
}

impl RunConfig {
    /// Applies defaults under `flags` (already merged with any file) and
    /// validates.
    pub fn resolve(command: Command, f: Flags) -> Result<Self, CliError> {
        let formats = allowed_formats(command);
        let format = f.format.unwrap_or(formats[0]);
        if !formats.contains(&format) {
            return Err(usage(format!("format {format:?} is not available for {command:?}")));
        }
        let (r, q, p) = (f.r.unwrap_or(2), f.q.unwrap_or(1), f.p.unwrap_or(1));
        pascal_rays::sequence::validate_params(r, q, p).map_err(|e| usage(e.to_string()))?;
        let y0 = match &f.y0 {
            Some(s) => parse_complex(s)?,
            None => Complex64::new(1.0, 0.0),
        };
        if y0 == Complex64::new(0.0, 0.0) {
            return Err(usage("y0 must be nonzero"));
        }
        let n_list: Vec<usize> = match &f.n_list {
            Some(s) => parse_list(s, "n-list")?,
            None => vec![50, 100, 200, 400],
        };
        let grid = match &f.grid {
            Some(s) => parse_grid(s)?,
            None => (256, 256),
        };
        if grid.0 < 16 || grid.1 < 16 {
            return Err(usage("grid needs at least 16 nodes per axis"));
        }
        let tol = f.tol.unwrap_or(1e-9);
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(usage("tol must be positive"));
        }
        let cubic = match &f.cubic {
            Some(s) => {
                let v: Vec<Complex64> = s.split(',').map(parse_complex).collect::<Result<_, _>>()?;
                let arr: [Complex64; 3] = v.try_into().map_err(|_| usage("cubic needs c2,c1,c0"))?;
                Some(arr)
            }
            None => None,
        };
        let x = match &f.x {
            Some(s) => parse_complex(s)?,
            None => Complex64::new(1.0, 0.0),
        };
        let n = f.n.unwrap_or(default_n(command));
        match command {
            Command::Roots | Command::Plot if n < 3 => return Err(usage("n must be at least 3")),
            Command::Report if n_list.iter().any(|&k| k < 4) || n_list.is_empty() => {
                return Err(usage("n-list entries must be at least 4"))
            }
            _ => {}
        }
        Ok(RunConfig {
            command,
            r,
            q,
            p,
            n,
            n_list,
            y0,
            window: match &f.window {
                Some(s) => parse_window(s)?,
                None => Window::default(),
            },
            grid,
            tol,
            output: f.output,
            format,
            cubic,
            x,
        })
    }
}
