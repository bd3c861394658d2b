use crate::error::{Error, Result};

/// Working precision threaded through every numeric operation.
///
/// `work_bits` is the precision the caller asks for; `guard_bits` are added
/// internally to absorb rounding in long sums. `target_eps` is the absolute
/// accuracy the evaluators aim for and defaults to `2^(4 - work_bits)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PrecisionContext {
    work_bits: u32,
    guard_bits: u32,
    target_eps: f64,
}

impl PrecisionContext {
    pub const MIN_BITS: u32 = 24;
    /// Keeps `target_eps` representable as an `f64`.
    pub const MAX_BITS: u32 = 1000;
    pub const DEFAULT_GUARD_BITS: u32 = 32;

    pub fn new(work_bits: u32) -> Result<Self> {
        if !(Self::MIN_BITS..=Self::MAX_BITS).contains(&work_bits) {
            return Err(Error::Precision(format!(
                "work_bits must lie in [{}, {}], got {work_bits}",
                Self::MIN_BITS,
                Self::MAX_BITS
            )));
        }
        Ok(PrecisionContext {
            work_bits,
            guard_bits: Self::DEFAULT_GUARD_BITS,
            target_eps: 2f64.powi(4 - work_bits as i32),
        })
    }

    /// Context aiming at `digits` correct decimal digits (`target_eps = 10^-digits`).
    pub fn with_digits(digits: u32) -> Result<Self> {
        let bits = (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 4;
        Self::new(bits.max(Self::MIN_BITS))?.with_target_eps(10f64.powi(-(digits as i32)))
    }

    pub fn with_guard_bits(mut self, guard_bits: u32) -> Self {
        self.guard_bits = guard_bits;
        self
    }

    pub fn with_target_eps(mut self, eps: f64) -> Result<Self> {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::Precision(format!("target_eps must be positive, got {eps}")));
        }
        self.target_eps = eps;
        Ok(self)
    }

    pub fn work_bits(&self) -> u32 {
        self.work_bits
    }

    pub fn guard_bits(&self) -> u32 {
        self.guard_bits
    }

    pub fn target_eps(&self) -> f64 {
        self.target_eps
    }

    /// Precision used for intermediate values: work plus guard bits.
    pub fn bits(&self) -> u32 {
        self.work_bits + self.guard_bits
    }

    /// Same request with `extra` more guard bits and a target tightened by
    /// `2^-extra`.
    pub fn boosted(&self, extra: u32) -> Self {
        let mut out = self.clone();
        out.guard_bits += extra;
        out.target_eps = (self.target_eps * 2f64.powi(-(extra as i32))).max(f64::MIN_POSITIVE);
        out
    }

    /// Decimal digits carried by `work_bits`.
    pub fn digits(&self) -> u32 {
        (self.work_bits as f64 * std::f64::consts::LOG10_2).floor() as u32
    }

    /// `-log2(target_eps)`, rounded up.
    pub fn target_bits(&self) -> u32 {
        (-self.target_eps.log2()).ceil().max(0.0) as u32
    }
}
