//! Run configuration: flat `key=value` files, command-line overrides and
//! up-front validation.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{VerifyError, VerifyResult};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Tsv,
    Text,
}

impl FromStr for Format {
    type Err = VerifyError;
    fn from_str(s: &str) -> VerifyResult<Self> {
        match s {
            "json" => Ok(Format::Json),
            "tsv" => Ok(Format::Tsv),
            "text" => Ok(Format::Text),
            _ => Err(VerifyError::ConfigInvalid(format!("unknown format {s:?}"))),
        }
    }
}

impl Format {
    pub fn as_str(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Tsv => "tsv",
            Format::Text => "text",
        }
    }
}

/// Everything a check run depends on. Prime coefficients are listed from
/// the constant term upward, each an integer `< q` naming an element of
/// `F_q` by its base-`p` digits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckConfig {
    pub check: Option<String>,
    pub all: bool,
    pub p: u32,
    pub e: u32,
    /// Degree of the coefficient field over `F_q`; derived from the primes
    /// when absent.
    pub ext: Option<u32>,
    pub primes: Vec<Vec<u32>>,
    pub root_index: Vec<usize>,
    /// Degree parameter for the polynomial identities (`d`, or `deg a`).
    pub degree: Option<u32>,
    pub prec: i64,
    pub tcap: u32,
    pub degcap: u32,
    pub samples: usize,
    pub seed: u64,
    /// `|z|_ℑ = q^(imag_scale/(q-1))` for checks sampling the large
    /// imaginary regime; each check has its own default.
    pub imag_scale: Option<i64>,
    pub format: Format,
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            check: None,
            all: false,
            p: 2,
            e: 1,
            ext: None,
            primes: Vec::new(),
            root_index: vec![0],
            degree: None,
            prec: 60,
            tcap: 40,
            degcap: 40,
            samples: 5,
            seed: 42,
            imag_scale: None,
            format: Format::Text,
            out: None,
        }
    }
}

fn parse_num<T: FromStr>(key: &str, v: &str) -> VerifyResult<T> {
    v.trim()
        .parse()
        .map_err(|_| VerifyError::ConfigInvalid(format!("{key}: cannot parse {v:?}")))
}

fn parse_list<T: FromStr>(key: &str, v: &str) -> VerifyResult<Vec<T>> {
    v.split(',').map(|x| parse_num(key, x)).collect()
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl CheckConfig {
    /// Applies one `key=value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> VerifyResult<()> {
        let v = value.trim();
        match key.trim() {
            "check" => self.check = Some(v.to_string()),
            "all" => self.all = parse_num(key, v)?,
            "p" => self.p = parse_num(key, v)?,
            "e" => self.e = parse_num(key, v)?,
            "ext" => self.ext = Some(parse_num(key, v)?),
            "prime" => self.set_prime(0, parse_list(key, v)?),
            "prime2" => self.set_prime(1, parse_list(key, v)?),
            "root-index" => self.root_index = parse_list(key, v)?,
            "degree" => self.degree = Some(parse_num(key, v)?),
            "prec" => self.prec = parse_num(key, v)?,
            "tcap" => self.tcap = parse_num(key, v)?,
            "degcap" => self.degcap = parse_num(key, v)?,
            "samples" => self.samples = parse_num(key, v)?,
            "seed" => self.seed = parse_num(key, v)?,
            "imag-scale" => self.imag_scale = Some(parse_num(key, v)?),
            "format" => self.format = v.parse()?,
            "out" => self.out = Some(PathBuf::from(v)),
            other => return Err(VerifyError::ConfigInvalid(format!("unknown key {other:?}"))),
        }
        Ok(())
    }

    fn set_prime(&mut self, i: usize, coeffs: Vec<u32>) {
        if self.primes.len() <= i {
            self.primes.resize(i + 1, Vec::new());
        }
        self.primes[i] = coeffs;
    }

    /// Parses the flat file form. Blank lines and `#` comments are skipped.
    pub fn parse_file(text: &str) -> VerifyResult<Self> {
        let mut cfg = CheckConfig::default();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| VerifyError::ConfigInvalid(format!("line {}: expected key=value", n + 1)))?;
            cfg.set(k, v)?;
        }
        Ok(cfg)
    }

    /// The file form; `parse_file(to_file_string())` returns `self`.
    pub fn to_file_string(&self) -> String {
        let mut s = String::new();
        if let Some(c) = &self.check {
            writeln!(s, "check={c}").unwrap();
        }
        if self.all {
            writeln!(s, "all=true").unwrap();
        }
        writeln!(s, "p={}", self.p).unwrap();
        writeln!(s, "e={}", self.e).unwrap();
        if let Some(x) = self.ext {
            writeln!(s, "ext={x}").unwrap();
        }
        for (i, pr) in self.primes.iter().enumerate() {
            let key = if i == 0 { "prime".to_string() } else { format!("prime{}", i + 1) };
            writeln!(s, "{key}={}", join(pr)).unwrap();
        }
        writeln!(s, "root-index={}", join(&self.root_index)).unwrap();
        if let Some(d) = self.degree {
            writeln!(s, "degree={d}").unwrap();
        }
        writeln!(s, "prec={}", self.prec).unwrap();
        writeln!(s, "tcap={}", self.tcap).unwrap();
        writeln!(s, "degcap={}", self.degcap).unwrap();
        writeln!(s, "samples={}", self.samples).unwrap();
        writeln!(s, "seed={}", self.seed).unwrap();
        if let Some(x) = self.imag_scale {
            writeln!(s, "imag-scale={x}").unwrap();
        }
        writeln!(s, "format={}", self.format.as_str()).unwrap();
        if let Some(o) = &self.out {
            writeln!(s, "out={}", o.display()).unwrap();
        }
        s
    }

    /// Checks the parameters that do not depend on the selected check.
    pub fn validate(&self) -> VerifyResult<()> {
        let bad = |m: String| Err(VerifyError::ConfigInvalid(m));
        if self.check.is_none() && !self.all {
            return bad("either a check name or --all is required".into());
        }
        if self.check.is_some() && self.all {
            return bad("--check and --all are mutually exclusive".into());
        }
        if self.prec < 1 || self.prec > 4000 {
            return bad(format!("prec {} outside 1..=4000", self.prec));
        }
        if self.tcap == 0 || self.tcap > 400 {
            return bad(format!("tcap {} outside 1..=400", self.tcap));
        }
        if self.degcap == 0 {
            return bad("degcap must be positive".into());
        }
        if self.samples == 0 || self.samples > 1000 {
            return bad(format!("samples {} outside 1..=1000", self.samples));
        }
        if self.primes.len() > 2 {
            return bad("at most two primes are supported".into());
        }
        if self.primes.iter().any(|p| p.len() < 2) {
            return bad("a prime needs degree at least 1".into());
        }
        let q = (self.p as u64).checked_pow(self.e).unwrap_or(u64::MAX);
        for pr in &self.primes {
            if let Some(&c) = pr.iter().find(|&&c| c as u64 >= q) {
                return bad(format!("prime coefficient {c} is not an element index of F_{q}"));
            }
            if pr.last() != Some(&1) {
                return bad("primes must be monic (leading coefficient 1)".into());
            }
        }
        Ok(())
    }
}
