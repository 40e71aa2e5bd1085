//! Constrained partition enumeration.
//!
//! Partitions are produced depth-first with the largest admissible part tried
//! first, so every stream is in lexicographically decreasing order of parts.
//! Each constraint is checked incrementally as a part is appended, which keeps
//! the search from ever materialising an inadmissible prefix.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;

/// How the Andrews–Gordon side condition is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AgInterpretation {
    /// λ_j − λ_{j+d−1} ≥ 2 for every j, and at most i − 1 parts equal to 1.
    #[default]
    Standard,
    /// At most d − 1 positions j with λ_j − λ_{j+1} = 1, and at most i − 1 parts equal to 1.
    Literal,
}

impl fmt::Display for AgInterpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AgInterpretation::Standard => "standard",
            AgInterpretation::Literal => "literal",
        })
    }
}

impl FromStr for AgInterpretation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(Self::Standard),
            "literal" => Ok(Self::Literal),
            other => Err(Error::Parameter(format!("unknown interpretation {other:?}"))),
        }
    }
}

/// Which partitions an enumeration admits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Constraint {
    All,
    /// Every part value occurs at most this many times (the set P uses m − 1).
    MaxRepeat(u32),
    /// No part is a multiple of the modulus (the set Q).
    NoPartsDivisibleBy(u32),
    /// Consecutive parts differ by at least 2.
    GapAtLeastTwo,
    /// Consecutive parts differ by at least 2 and 1 is not a part.
    GapAtLeastTwoNoOnes,
    AndrewsGordon { d: u32, i: u32, interpretation: AgInterpretation },
}

impl Constraint {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Constraint::MaxRepeat(0) => {
                Err(Error::Parameter("maximum repetition must be at least 1".into()))
            }
            Constraint::NoPartsDivisibleBy(m) if m < 2 => {
                Err(Error::Parameter(format!("modulus must be at least 2, got {m}")))
            }
            Constraint::AndrewsGordon { d, i, .. } => {
                if d == 0 {
                    Err(Error::Parameter("d must be at least 1".into()))
                } else if i == 0 || i > 2 * d {
                    Err(Error::Parameter(format!("i must lie in 1..={}, got {i}", 2 * d)))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    /// Whether `candidate` may follow `prefix`. The caller ensures
    /// `candidate <= prefix.last()`.
    fn admits(&self, prefix: &[u32], candidate: u32) -> bool {
        let last = prefix.last().copied();
        match *self {
            Constraint::All => true,
            Constraint::MaxRepeat(r) => trailing_run(prefix, candidate) < r as usize,
            Constraint::NoPartsDivisibleBy(m) => !candidate.is_multiple_of(m),
            Constraint::GapAtLeastTwo => last.is_none_or(|l| l - candidate >= 2),
            Constraint::GapAtLeastTwoNoOnes => {
                candidate != 1 && last.is_none_or(|l| l - candidate >= 2)
            }
            Constraint::AndrewsGordon { d, i, interpretation } => {
                if candidate == 1 && trailing_run(prefix, 1) >= (i - 1) as usize {
                    return false;
                }
                match interpretation {
                    AgInterpretation::Standard => {
                        // new part sits at index t = prefix.len(); check λ_{t−d+1} − λ_t ≥ 2
                        let span = (d - 1) as usize;
                        if span == 0 {
                            return false;
                        }
                        match prefix.len().checked_sub(span) {
                            Some(j) => prefix[j] - candidate >= 2,
                            None => true,
                        }
                    }
                    AgInterpretation::Literal => {
                        let unit_steps = prefix.windows(2).filter(|w| w[0] - w[1] == 1).count()
                            + usize::from(last.is_some_and(|l| l - candidate == 1));
                        unit_steps < d as usize
                    }
                }
            }
        }
    }

    /// Checks a whole partition against the constraint.
    pub fn accepts(&self, p: &Partition) -> bool {
        let parts = p.parts();
        (0..parts.len()).all(|t| self.admits(&parts[..t], parts[t]))
    }
}

fn trailing_run(prefix: &[u32], value: u32) -> usize {
    prefix.iter().rev().take_while(|&&x| x == value).count()
}

/// Lazily enumerates the partitions of `n` admitted by `constraint`.
pub fn enumerate_partitions(n: u32, constraint: Constraint) -> Result<Partitions> {
    constraint.validate()?;
    Ok(Partitions {
        n,
        constraint,
        parts: Vec::new(),
        sum: 0,
        state: State::Fresh,
    })
}

/// Counts without materialising any partition's parts beyond the search stack.
pub fn count_partitions(n: u32, constraint: Constraint) -> Result<u64> {
    Ok(enumerate_partitions(n, constraint)?.count() as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum State {
    Fresh,
    Running,
    Done,
}

/// Iterator returned by [`enumerate_partitions`].
#[derive(Debug, Clone)]
pub struct Partitions {
    n: u32,
    constraint: Constraint,
    parts: Vec<u32>,
    sum: u32,
    state: State,
}

impl Partitions {
    /// Appends the largest admissible part not exceeding `bound`.
    fn push_largest(&mut self, bound: u32) -> bool {
        let mut c = bound.min(self.n - self.sum);
        while c >= 1 {
            if self.constraint.admits(&self.parts, c) {
                self.parts.push(c);
                self.sum += c;
                return true;
            }
            c -= 1;
        }
        false
    }

    /// Replaces the deepest part by the next smaller admissible value,
    /// popping exhausted levels. Returns false once the search space is empty.
    fn backtrack(&mut self) -> bool {
        while let Some(p) = self.parts.pop() {
            self.sum -= p;
            if p > 1 && self.push_largest(p - 1) {
                return true;
            }
        }
        false
    }

    /// Extends the current prefix greedily; backtracks on dead ends.
    fn descend(&mut self) -> bool {
        loop {
            if self.sum == self.n {
                return true;
            }
            let bound = self.parts.last().copied().unwrap_or(self.n);
            if !self.push_largest(bound) && !self.backtrack() {
                return false;
            }
        }
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let found = match self.state {
            State::Done => return None,
            State::Fresh => {
                self.state = State::Running;
                if self.n == 0 {
                    self.state = State::Done;
                    return Some(Partition::empty());
                }
                self.descend()
            }
            State::Running => self.backtrack() && self.descend(),
        };
        if found {
            Some(Partition::from_parts_unchecked(self.parts.clone()))
        } else {
            self.state = State::Done;
            None
        }
    }
}
