use std::fmt;
use std::str::FromStr;

/// Inclusive integer interval written `lo..hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntRange {
    pub lo: i64,
    pub hi: i64,
}

/// Ranges longer than this are rejected as input errors.
pub const MAX_RANGE_LEN: i64 = 10_000;

impl IntRange {
    pub fn single(v: i64) -> Self {
        IntRange { lo: v, hi: v }
    }

    pub fn values(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (lo, hi) = s
            .split_once("..")
            .ok_or_else(|| format!("expected `lo..hi`, got `{s}`"))?;
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        let parse = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|e| format!("bad range bound `{t}`: {e}"))
        };
        let (lo, hi) = (parse(lo)?, parse(hi)?);
        if lo > hi {
            return Err(format!("empty range {lo}..{hi}"));
        }
        if hi - lo >= MAX_RANGE_LEN {
            return Err(format!(
                "range {lo}..{hi} has more than {MAX_RANGE_LEN} values"
            ));
        }
        Ok(IntRange { lo, hi })
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}
