//! Run configuration: a flat `key = value` file overlaid with command-line
//! flags.  Every value keeps its origin so that errors point at a file line
//! or a flag.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use clap::Parser;
use concentric_casimir::energy::TruncationPolicy;
use concentric_casimir::modes::{MAX_DIM, MIN_DIM};
use concentric_casimir::{BoundaryPair, ChannelSelection};

#[derive(Parser, Debug, Default)]
#[command(name = "casimir", version, about = "Casimir free energy of concentric hyperspheres")]
pub struct Cli {
    /// Flat `key = value` file; flags given on the command line win.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[arg(long, value_parser = ["point", "sweep", "compare", "convergence", "selftest"])]
    pub mode: Option<String>,
    /// Spatial dimensions, comma separated.
    #[arg(long, value_name = "D,...")]
    pub dim: Option<String>,
    /// Relative gaps `(a2 - a1)/a1`: a comma list or `lo:hi:n` (log spaced).
    #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
    pub eps: Option<String>,
    /// Temperatures in units of `1/a1`: a comma list or `lo:hi:n`.
    #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
    pub temp: Option<String>,
    /// Boundary pair `inner,outer` with each of `pc`, `ip`; repeatable, or `all`.
    #[arg(long, value_name = "INNER,OUTER")]
    pub bc: Vec<String>,
    /// `te`, `tm`, `total`, or a comma list of them.
    #[arg(long, value_name = "CHANNEL")]
    pub channel: Option<String>,
    /// Inner radius.
    #[arg(long, allow_hyphen_values = true)]
    pub a1: Option<String>,
    /// Target relative accuracy of the exact sums
    #[arg(long = "rel-tol", value_name = "TOL")]
    pub rel_tol: Option<String>,
    /// Hard cap on the angular momentum; exceeding it is a nonconvergence
    #[arg(long = "l-max", value_name = "N")]
    pub l_max: Option<String>,
    /// Hard cap on the Matsubara index
    #[arg(long = "p-max", value_name = "N")]
    pub p_max: Option<String>,
    #[arg(long, value_parser = ["csv", "json"])]
    pub format: Option<String>,
    /// Output file (standard output when absent).
    #[arg(long, value_name = "PATH")]
    pub out: Option<String>,
    /// Worker threads (all cores when absent); output does not depend on it
    #[arg(long, value_name = "N")]
    pub threads: Option<String>,
    /// Compare against a previous output; exit 3 on mismatch.
    #[arg(long, value_name = "PATH")]
    pub golden: Option<String>,
    /// Also compute the force `-∂E/∂(a2 - a1)`.
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Point,
    Sweep,
    Compare,
    Convergence,
    Selftest,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Point => "point",
            Mode::Sweep => "sweep",
            Mode::Compare => "compare",
            Mode::Convergence => "convergence",
            Mode::Selftest => "selftest",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub dims: Vec<u32>,
    pub eps: Vec<f64>,
    pub temps: Vec<f64>,
    pub pairs: Vec<BoundaryPair>,
    pub channels: Vec<ChannelSelection>,
    pub a1: f64,
    pub policy: TruncationPolicy,
    pub force: bool,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
    pub golden: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
enum Origin {
    Line(PathBuf, usize),
    Flag(&'static str),
    Default,
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::Line(p, n) => write!(f, "{}:{n}", p.display()),
            Origin::Flag(name) => write!(f, "--{name}"),
            Origin::Default => f.write_str("default"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

const KEYS: [&str; 15] = [
    "mode", "dim", "eps", "temp", "bc", "channel", "a1", "rel_tol", "l_max", "p_max", "force", "format", "out",
    "threads", "golden",
];

#[derive(Debug, Default)]
struct Entries(Vec<(&'static str, String, Origin)>);

impl Entries {
    fn set(&mut self, key: &'static str, value: String, origin: Origin) {
        self.0.retain(|(k, _, _)| *k != key);
        self.0.push((key, value, origin));
    }

    fn get(&self, key: &str) -> Option<(&str, &Origin)> {
        self.0.iter().find(|(k, _, _)| *k == key).map(|(_, v, o)| (v.as_str(), o))
    }
}

/// Parse `key = value` lines; `#` starts a comment.
fn read_file(path: &Path, text: &str, into: &mut Entries) -> Result<(), ConfigError> {
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let origin = Origin::Line(path.to_path_buf(), i + 1);
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| ConfigError(format!("{origin}: expected 'key = value', got '{line}'")))?;
        let k = k.trim().replace('-', "_");
        let key = KEYS
            .iter()
            .find(|&&known| known == k)
            .ok_or_else(|| ConfigError(format!("{origin}: unknown key '{k}' (known: {})", KEYS.join(", "))))?;
        into.set(key, v.trim().to_string(), origin);
    }
    Ok(())
}

fn field<T>(key: &str, origin: &Origin, r: Result<T, String>) -> Result<T, ConfigError> {
    r.map_err(|m| ConfigError(format!("{origin}: field '{key}': {m}")))
}

fn number(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("'{}' is not a number", s.trim()))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("'{}' is not finite", s.trim()))
    }
}

fn list<T>(s: &str, item: impl Fn(&str) -> Result<T, String>) -> Result<Vec<T>, String> {
    let out = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(item)
        .collect::<Result<Vec<_>, _>>()?;
    if out.is_empty() {
        return Err("list is empty".into());
    }
    Ok(out)
}

/// Comma list, or `lo:hi:n` spaced evenly in `ln`.
pub fn real_list(s: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.len() {
        1 => list(s, number),
        3 => {
            let (lo, hi) = (number(parts[0])?, number(parts[1])?);
            let n: usize = parts[2].trim().parse().map_err(|_| format!("'{}' is not a count", parts[2].trim()))?;
            if !(lo > 0.0 && hi >= lo) || n == 0 {
                return Err(format!("range '{s}' needs 0 < lo <= hi and n >= 1"));
            }
            if n == 1 {
                return Ok(vec![lo]);
            }
            let step = (hi / lo).ln() / (n - 1) as f64;
            Ok((0..n).map(|k| if k == n - 1 { hi } else { lo * (step * k as f64).exp() }).collect())
        }
        _ => Err(format!("'{s}' is neither a comma list nor lo:hi:n")),
    }
}

fn dims(s: &str) -> Result<Vec<u32>, String> {
    list(s, |t| {
        let d: u32 = t.parse().map_err(|_| format!("'{t}' is not an integer"))?;
        if (MIN_DIM..=MAX_DIM).contains(&d) {
            Ok(d)
        } else {
            Err(format!("D = {d} is outside {MIN_DIM}..={MAX_DIM}"))
        }
    })
}

/// `pc,ip` items separated by `;` or whitespace, or `all`.
pub fn pairs(s: &str) -> Result<Vec<BoundaryPair>, String> {
    if s.trim().eq_ignore_ascii_case("all") {
        return Ok(BoundaryPair::ALL.to_vec());
    }
    let out = s
        .split([';', ' ', '\t'])
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.parse::<BoundaryPair>().map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    if out.is_empty() {
        return Err("list is empty".into());
    }
    Ok(out)
}

fn count(s: &str) -> Result<u32, String> {
    match s.trim().parse::<u32>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(format!("'{}' is not a positive integer", s.trim())),
    }
}

fn boolean(s: &str) -> Result<bool, String> {
    match s.trim().to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        other => Err(format!("'{other}' is not a boolean")),
    }
}

fn dedup<T: PartialEq + Clone>(v: Vec<T>) -> Vec<T> {
    let mut out: Vec<T> = Vec::with_capacity(v.len());
    for x in v {
        if !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

impl RunConfig {
    /// Merge the config file (if any) with the flags and validate.
    pub fn resolve(cli: &Cli) -> Result<Self, ConfigError> {
        let mut e = Entries::default();
        if let Some(path) = &cli.config {
            let text = fs::read_to_string(path).map_err(|err| ConfigError(format!("{}: {err}", path.display())))?;
            read_file(path, &text, &mut e)?;
        }
        let flags: [(&'static str, &Option<String>, &'static str); 13] = [
            ("mode", &cli.mode, "mode"),
            ("dim", &cli.dim, "dim"),
            ("eps", &cli.eps, "eps"),
            ("temp", &cli.temp, "temp"),
            ("channel", &cli.channel, "channel"),
            ("a1", &cli.a1, "a1"),
            ("rel_tol", &cli.rel_tol, "rel-tol"),
            ("l_max", &cli.l_max, "l-max"),
            ("p_max", &cli.p_max, "p-max"),
            ("format", &cli.format, "format"),
            ("out", &cli.out, "out"),
            ("threads", &cli.threads, "threads"),
            ("golden", &cli.golden, "golden"),
        ];
        for (key, value, flag) in flags {
            if let Some(v) = value {
                e.set(key, v.clone(), Origin::Flag(flag));
            }
        }
        if !cli.bc.is_empty() {
            e.set("bc", cli.bc.join(";"), Origin::Flag("bc"));
        }
        if cli.force {
            e.set("force", "true".into(), Origin::Flag("force"));
        }
        Self::from_entries(&e)
    }

    /// Parse the same `key = value` text the output header carries.
    #[cfg(test)]
    pub fn from_text(path: &Path, text: &str) -> Result<Self, ConfigError> {
        let mut e = Entries::default();
        read_file(path, text, &mut e)?;
        Self::from_entries(&e)
    }

    fn from_entries(e: &Entries) -> Result<Self, ConfigError> {
        let default = Origin::Default;
        let get = |key: &str, fallback: &'static str| e.get(key).unwrap_or((fallback, &default));

        let (v, o) = get("mode", "point");
        let mode = field("mode", o, match v.trim() {
            "point" => Ok(Mode::Point),
            "sweep" => Ok(Mode::Sweep),
            "compare" => Ok(Mode::Compare),
            "convergence" => Ok(Mode::Convergence),
            "selftest" => Ok(Mode::Selftest),
            other => Err(format!("unknown mode '{other}'")),
        })?;

        let (v, o) = get("dim", "3");
        let dims = dedup(field("dim", o, dims(v))?);
        let (v, o) = get("eps", "0.1");
        let eps = dedup(field("eps", o, real_list(v))?);
        field("eps", o, match eps.iter().find(|&&x| x <= 0.0) {
            Some(x) => Err(format!("gaps must be positive, got {x}")),
            None => Ok(()),
        })?;
        let (v, o) = get("temp", "0");
        let temps = dedup(field("temp", o, real_list(v))?);
        field("temp", o, match temps.iter().find(|&&x| x < 0.0) {
            Some(x) => Err(format!("temperatures must be non-negative, got {x}")),
            None => Ok(()),
        })?;
        let (v, o) = get("bc", "pc,pc");
        let pairs = dedup(field("bc", o, pairs(v))?);
        let (v, o) = get("channel", "total");
        let channels = dedup(field("channel", o, list(v, |t| t.parse::<ChannelSelection>().map_err(|e| e.to_string())))?);

        let (v, o) = get("a1", "1");
        let a1 = field("a1", o, number(v))?;
        field("a1", o, if a1 > 0.0 { Ok(()) } else { Err(format!("must be positive, got {a1}")) })?;

        let mut policy = TruncationPolicy::default();
        if let Some((v, o)) = e.get("rel_tol") {
            policy.rel_tol = field("rel_tol", o, number(v))?;
            field("rel_tol", o, policy.validate().map_err(|err| err.to_string()))?;
        }
        if let Some((v, o)) = e.get("l_max") {
            policy.l_max_hard = field("l_max", o, count(v))?;
        }
        if let Some((v, o)) = e.get("p_max") {
            policy.p_max_hard = field("p_max", o, count(v))?;
        }
        let force = match e.get("force") {
            Some((v, o)) => field("force", o, boolean(v))?,
            None => false,
        };
        let (v, o) = get("format", "csv");
        let format = field("format", o, match v.trim() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format '{other}' (csv or json)")),
        })?;
        let out = e.get("out").map(|(v, _)| PathBuf::from(v));
        let threads = match e.get("threads") {
            Some((v, o)) => Some(field("threads", o, count(v))? as usize),
            None => None,
        };
        let golden = e.get("golden").map(|(v, _)| PathBuf::from(v));

        if mode == Mode::Point {
            for (key, n) in [("dim", dims.len()), ("eps", eps.len()), ("temp", temps.len()), ("bc", pairs.len())] {
                if n != 1 {
                    let (_, o) = get(key, "");
                    return Err(ConfigError(format!("{o}: field '{key}': point mode takes a single value, got {n}")));
                }
            }
        }
        if golden.is_some() && !matches!(mode, Mode::Point | Mode::Sweep) {
            let (_, o) = get("golden", "");
            return Err(ConfigError(format!("{o}: field 'golden': only point and sweep output can be compared")));
        }

        Ok(Self {
            mode,
            dims,
            eps,
            temps,
            pairs,
            channels,
            a1,
            policy,
            force,
            format,
            out,
            threads,
            golden,
        })
    }

    /// The resolved settings that determine the numbers, as `key = value`
    /// lines.  Thread count and file locations are left out so that the
    /// output does not depend on them.
    pub fn metadata(&self) -> Vec<(&'static str, String)> {
        let join = |v: Vec<String>, sep: &str| v.join(sep);
        vec![
            ("mode", self.mode.name().to_string()),
            ("dim", join(self.dims.iter().map(u32::to_string).collect(), ",")),
            ("eps", join(self.eps.iter().map(f64::to_string).collect(), ",")),
            ("temp", join(self.temps.iter().map(f64::to_string).collect(), ",")),
            ("bc", join(self.pairs.iter().map(|p| format!("{},{}", p.inner, p.outer)).collect(), "; ")),
            ("channel", join(self.channels.iter().map(|c| c.name().to_string()).collect(), ",")),
            ("a1", self.a1.to_string()),
            ("rel_tol", format!("{:e}", self.policy.rel_tol)),
            ("l_max", self.policy.l_max_hard.to_string()),
            ("p_max", self.policy.p_max_hard.to_string()),
            ("force", self.force.to_string()),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("casimir").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn defaults() {
        let c = RunConfig::resolve(&cli(&[])).unwrap();
        assert_eq!(c.mode, Mode::Point);
        assert_eq!((c.dims.clone(), c.eps.clone(), c.temps.clone()), (vec![3], vec![0.1], vec![0.0]));
        assert_eq!(c.pairs, vec![BoundaryPair::PC_PC]);
        assert_eq!(c.channels, vec![ChannelSelection::Total]);
        assert_eq!(c.policy, TruncationPolicy::default());
    }

    #[test]
    fn log_range() {
        let v = real_list("0.01:0.3:5").unwrap();
        assert_eq!(v.len(), 5);
        assert_eq!((v[0], v[4]), (0.01, 0.3));
        for w in v.windows(2) {
            assert!((w[1] / w[0] - (30f64).powf(0.25)).abs() < 1e-12);
        }
        assert!(real_list("0:1:3").is_err());
        assert!(real_list("1:2").is_err());
        assert_eq!(real_list("0.1, 0.2").unwrap(), vec![0.1, 0.2]);
    }

    #[test]
    fn pair_lists() {
        assert_eq!(pairs("pc,ip; ip-ip").unwrap(), vec![BoundaryPair::PC_IP, BoundaryPair::IP_IP]);
        assert_eq!(pairs("all").unwrap().len(), 4);
        assert!(pairs("pc").is_err());
        let c = RunConfig::resolve(&cli(&["--mode", "sweep", "--bc", "pc,ip", "--bc", "ip,pc"])).unwrap();
        assert_eq!(c.pairs, vec![BoundaryPair::PC_IP, BoundaryPair::IP_PC]);
    }

    #[test]
    fn file_diagnostics_name_the_line() {
        let p = Path::new("run.cfg");
        let err = RunConfig::from_text(p, "mode = sweep\n# comment\neps = 0.1, -2\n").unwrap_err();
        assert!(err.0.starts_with("run.cfg:3: field 'eps'"), "{err}");
        let err = RunConfig::from_text(p, "mode = sweep\ncolour = red\n").unwrap_err();
        assert!(err.0.starts_with("run.cfg:2: unknown key 'colour'"), "{err}");
        let err = RunConfig::from_text(p, "dim\n").unwrap_err();
        assert!(err.0.starts_with("run.cfg:1: expected"), "{err}");
        let err = RunConfig::from_text(p, "dim = 2\n").unwrap_err();
        assert!(err.0.contains("outside"), "{err}");
        let err = RunConfig::from_text(p, "rel-tol = 0.5\n").unwrap_err();
        assert!(err.0.starts_with("run.cfg:1: field 'rel_tol'"), "{err}");
    }

    #[test]
    fn point_mode_takes_single_values() {
        let err = RunConfig::from_text(Path::new("c"), "eps = 0.1,0.2\n").unwrap_err();
        assert!(err.0.contains("single value"), "{err}");
        assert!(RunConfig::from_text(Path::new("c"), "mode = sweep\neps = 0.1,0.2\n").is_ok());
    }

    #[test]
    fn flags_override_file_entries() {
        let dir = std::env::temp_dir().join(format!("casimir-config-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.cfg");
        fs::write(&path, "mode = sweep\neps = 0.2\ndim = 4\n").unwrap();
        let c = RunConfig::resolve(&cli(&["--config", path.to_str().unwrap(), "--eps", "0.3"])).unwrap();
        assert_eq!((c.mode, c.dims.clone(), c.eps.clone()), (Mode::Sweep, vec![4], vec![0.3]));
        let err = RunConfig::resolve(&cli(&["--config", path.to_str().unwrap(), "--temp", "-1"])).unwrap_err();
        assert!(err.0.starts_with("--temp: field 'temp'"), "{err}");
        fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn metadata_round_trips() {
        let c = RunConfig::resolve(&cli(&[
            "--mode", "sweep", "--dim", "3,5", "--eps", "0.01:0.3:4", "--temp", "0,0.5", "--bc", "all", "--channel",
            "te,total", "--rel-tol", "1e-7", "--force",
        ]))
        .unwrap();
        let text: String = c.metadata().iter().map(|(k, v)| format!("{k} = {v}\n")).collect();
        let back = RunConfig::from_text(Path::new("header"), &text).unwrap();
        assert_eq!(back, c);
    }
}
