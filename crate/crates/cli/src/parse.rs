//! Parsers for the small textual formats the CLI accepts: comma lists,
//! grid specifications, and codebook specifications.

use std::path::PathBuf;

use crate::CliError;

/// Parse a comma-separated list of finite floats, e.g. `2,2.5`.
pub fn parse_list(s: &str) -> Result<Vec<f64>, CliError> {
    if s.trim().is_empty() {
        return Err(CliError::usage("expected a comma-separated list of numbers"));
    }
    s.split(',')
        .map(|tok| {
            let tok = tok.trim();
            let v: f64 = tok
                .parse()
                .map_err(|_| CliError::Usage(format!("not a number: {tok:?}")))?;
            if !v.is_finite() {
                return Err(CliError::Usage(format!("value must be finite: {tok:?}")));
            }
            Ok(v)
        })
        .collect()
}

/// How a grid's interior points are laid out.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GridKind {
    /// Fixed step from start to stop (inclusive where the step lands).
    Step(f64),
    /// Exactly this many points, endpoints included.
    Count(usize),
}

/// A one-dimensional evaluation grid over nonnegative SNRs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub kind: GridKind,
}

/// Parse `start:stop:step`, `start:stop:#count`, or a bare `value` for a
/// single-point grid.
pub fn parse_grid(s: &str) -> Result<GridSpec, CliError> {
    let parts: Vec<&str> = s.split(':').collect();
    // negative values are legal here: in dB mode the axis converts to linear
    // afterwards, and commands re-validate the converted grid
    let parse_f = |tok: &str, what: &str| -> Result<f64, CliError> {
        let v: f64 = tok
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("bad grid {what}: {tok:?}")))?;
        if !v.is_finite() {
            return Err(CliError::Usage(format!("grid {what} must be finite: {tok:?}")));
        }
        Ok(v)
    };
    match parts.as_slice() {
        [single] => {
            let v = parse_f(single, "point")?;
            Ok(GridSpec { start: v, stop: v, kind: GridKind::Count(1) })
        }
        [start, stop, third] => {
            let start = parse_f(start, "start")?;
            let stop = parse_f(stop, "stop")?;
            if stop < start {
                return Err(CliError::usage("grid stop must not precede start"));
            }
            let third = third.trim();
            if let Some(count) = third.strip_prefix('#') {
                let count: usize = count
                    .parse()
                    .map_err(|_| CliError::Usage(format!("bad grid count: {third:?}")))?;
                if count == 0 {
                    return Err(CliError::usage("grid count must be positive"));
                }
                if count == 1 && stop != start {
                    return Err(CliError::usage("a one-point grid needs start == stop"));
                }
                if count > 10_000_000 {
                    return Err(CliError::usage("grid count is unreasonably large"));
                }
                Ok(GridSpec { start, stop, kind: GridKind::Count(count) })
            } else {
                let step = parse_f(third, "step")?;
                if step <= 0.0 {
                    return Err(CliError::usage("grid step must be positive"));
                }
                if stop == start {
                    return Err(CliError::usage("a step grid needs start < stop"));
                }
                if (stop - start) / step > 10_000_000.0 {
                    return Err(CliError::usage("grid step produces an unreasonable point count"));
                }
                Ok(GridSpec { start, stop, kind: GridKind::Step(step) })
            }
        }
        _ => Err(CliError::usage(
            "grid must be `start:stop:step`, `start:stop:#count`, or a single value",
        )),
    }
}

impl GridSpec {
    /// Expand to the concrete, strictly increasing point list.
    pub fn materialize(&self) -> Vec<f64> {
        match self.kind {
            GridKind::Count(1) => vec![self.start],
            GridKind::Count(n) => {
                let h = (self.stop - self.start) / (n - 1) as f64;
                (0..n)
                    .map(|i| if i == n - 1 { self.stop } else { self.start + h * i as f64 })
                    .collect()
            }
            GridKind::Step(h) => {
                // bounded index loop: a step below one ulp of the endpoints
                // must not spin, and clamped duplicates collapse
                let ratio = (self.stop - self.start) / h;
                let n_steps = (ratio + ratio * 1e-12 + 1e-9).floor() as u64;
                let mut pts = Vec::with_capacity(n_steps as usize + 1);
                for i in 0..=n_steps {
                    pts.push((self.start + h * i as f64).min(self.stop));
                }
                pts.dedup();
                pts
            }
        }
    }
}

/// Where a codebook comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum CodebookSpec {
    Bpsk,
    Random { m: usize, n: usize },
    File(PathBuf),
    Inline(Vec<Vec<f64>>),
}

/// Parse `bpsk`, `random:m=8,n=2`, `file:<path>`, or `inline:<json array of
/// codewords>`.
pub fn parse_codebook_spec(s: &str) -> Result<CodebookSpec, CliError> {
    let s = s.trim();
    if s == "bpsk" {
        return Ok(CodebookSpec::Bpsk);
    }
    if let Some(rest) = s.strip_prefix("random:") {
        let (mut m, mut n) = (None, None);
        for kv in rest.split(',') {
            let (key, value) = kv
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("bad random codebook field: {kv:?}")))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("bad random codebook size: {value:?}")))?;
            match key.trim() {
                "m" => m = Some(value),
                "n" => n = Some(value),
                other => {
                    return Err(CliError::Usage(format!(
                        "unknown random codebook field: {other:?}"
                    )))
                }
            }
        }
        let (m, n) = (
            m.ok_or_else(|| CliError::usage("random codebook needs m="))?,
            n.ok_or_else(|| CliError::usage("random codebook needs n="))?,
        );
        if m == 0 || n == 0 || m > 1 << 20 || n > 1 << 16 {
            return Err(CliError::usage("random codebook sizes out of range"));
        }
        return Ok(CodebookSpec::Random { m, n });
    }
    if let Some(path) = s.strip_prefix("file:") {
        if path.is_empty() {
            return Err(CliError::usage("file codebook needs a path"));
        }
        return Ok(CodebookSpec::File(PathBuf::from(path)));
    }
    if let Some(json) = s.strip_prefix("inline:") {
        let words: Vec<Vec<f64>> = serde_json::from_str(json)
            .map_err(|e| CliError::Usage(format!("bad inline codebook: {e}")))?;
        return Ok(CodebookSpec::Inline(words));
    }
    Err(CliError::Usage(format!(
        "codebook must be bpsk, random:m=..,n=.., file:<path>, or inline:<json>, got {s:?}"
    )))
}

impl CodebookSpec {
    /// Load or generate the codebook. Random codebooks draw from `seed`.
    pub fn resolve(&self, seed: u64) -> Result<mmse_codes::oracle::DiscreteCodebook, CliError> {
        use mmse_codes::oracle::DiscreteCodebook;
        match self {
            CodebookSpec::Bpsk => Ok(DiscreteCodebook::bpsk()),
            CodebookSpec::Random { m, n } => Ok(DiscreteCodebook::random_gaussian(*m, *n, seed)?),
            CodebookSpec::Inline(words) => Ok(DiscreteCodebook::new(words.clone())?),
            CodebookSpec::File(path) => {
                let text = std::fs::read_to_string(path)?;
                let words: Vec<Vec<f64>> = serde_json::from_str(&text)
                    .map_err(|e| CliError::Usage(format!("bad codebook file: {e}")))?;
                Ok(DiscreteCodebook::new(words)?)
            }
        }
    }
}
