//! Words in the universal string Coxeter group `C^n`.
//!
//! `C^n` is generated by involutions `r_0, …, r_{n-1}` whose only other
//! relations are `(r_i r_j)^2 = 1` for `|i - j| >= 2`. The group is
//! right-angled, so the word problem is solved by free cancellation up to
//! commutation: a word is reduced exactly when no two equal letters are
//! separated only by letters commuting with them. Among the reduced
//! words of an element we keep the lexicographically least one, which makes
//! equality of group elements plain equality of letter sequences.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Two generators commute iff their indices differ by at least two.
#[inline]
pub fn commute(a: usize, b: usize) -> bool {
    a.abs_diff(b) >= 2
}

/// An element of `C^n`, stored in canonical normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CoxWord {
    rank: usize,
    letters: Vec<usize>,
}

fn check_letters(letters: &[usize], rank: usize) -> Result<()> {
    match letters.iter().find(|&&l| l >= rank) {
        Some(&letter) => Err(Error::InvalidGenerator { letter, rank }),
        None => Ok(()),
    }
}

/// Freely reduces `letters`, cancelling pairs of equal letters separated only
/// by commuting letters. The result represents the same element of `C^rank`.
pub fn reduce(letters: &[usize], rank: usize) -> Result<Vec<usize>> {
    check_letters(letters, rank)?;
    let mut out: Vec<usize> = Vec::with_capacity(letters.len());
    for &a in letters {
        // Appending `a` to a reduced word either cancels the last occurrence
        // of `a` that can be shuffled to the end, or leaves the word reduced.
        let mut cancel = None;
        for (pos, &b) in out.iter().enumerate().rev() {
            if b == a {
                cancel = Some(pos);
                break;
            }
            if !commute(a, b) {
                break;
            }
        }
        match cancel {
            Some(pos) => {
                out.remove(pos);
            }
            None => out.push(a),
        }
    }
    Ok(out)
}

/// Lexicographically least rearrangement of a reduced word by swaps of
/// adjacent commuting letters (greedy extraction of the least available
/// letter from the commutation trace).
fn lex_least(reduced: &[usize]) -> Vec<usize> {
    let len = reduced.len();
    let mut taken = vec![false; len];
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        let mut best: Option<usize> = None;
        for p in 0..len {
            if taken[p] {
                continue;
            }
            let a = reduced[p];
            let available = (0..p).all(|q| taken[q] || commute(reduced[q], a));
            if available && best.is_none_or(|b| a < reduced[b]) {
                best = Some(p);
            }
        }
        let p = best.expect("a nonempty trace always has a minimal letter");
        taken[p] = true;
        out.push(reduced[p]);
    }
    out
}

/// Canonical normal form of the element represented by `letters`.
pub fn normal_form(letters: &[usize], rank: usize) -> Result<CoxWord> {
    let reduced = reduce(letters, rank)?;
    Ok(CoxWord {
        rank,
        letters: lex_least(&reduced),
    })
}

impl CoxWord {
    pub fn identity(rank: usize) -> Self {
        CoxWord {
            rank,
            letters: Vec::new(),
        }
    }

    /// The generator `r_i`.
    pub fn generator(rank: usize, i: usize) -> Result<Self> {
        check_letters(&[i], rank)?;
        Ok(CoxWord {
            rank,
            letters: vec![i],
        })
    }

    /// Builds the element represented by `letters` (read right-to-left as a
    /// product `r_{l_0} r_{l_1} …`).
    pub fn new(rank: usize, letters: &[usize]) -> Result<Self> {
        normal_form(letters, rank)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    fn same_rank(&self, other: &CoxWord) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: other.rank,
            });
        }
        Ok(())
    }

    /// The product `self · other` (as elements acting on the left, `other`
    /// acts first).
    pub fn multiply(&self, other: &CoxWord) -> Result<CoxWord> {
        self.same_rank(other)?;
        let mut cat = self.letters.clone();
        cat.extend_from_slice(&other.letters);
        normal_form(&cat, self.rank)
    }

    pub fn inverse(&self) -> CoxWord {
        let rev: Vec<usize> = self.letters.iter().rev().copied().collect();
        normal_form(&rev, self.rank).expect("letters already validated")
    }

    /// `u⁻¹ · self · u`.
    pub fn conjugate(&self, u: &CoxWord) -> Result<CoxWord> {
        self.same_rank(u)?;
        let mut cat: Vec<usize> = u.letters.iter().rev().copied().collect();
        cat.extend_from_slice(&self.letters);
        cat.extend_from_slice(&u.letters);
        normal_form(&cat, self.rank)
    }

    pub fn is_involution(&self) -> bool {
        self.multiply(self)
            .map(|w| w.is_identity())
            .unwrap_or(false)
    }

    /// Image under the endomorphism of `C^n` sending `r_i` to `images[i]`.
    /// The images must have rank `target_rank`; this does not check that
    /// they satisfy the defining relations.
    pub fn substitute(&self, images: &[CoxWord]) -> Result<CoxWord> {
        if images.len() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: images.len(),
            });
        }
        let target = images.first().map_or(self.rank, |w| w.rank);
        let mut cat = Vec::new();
        for &l in &self.letters {
            let img = &images[l];
            if img.rank != target {
                return Err(Error::RankMismatch {
                    expected: target,
                    found: img.rank,
                });
            }
            cat.extend_from_slice(&img.letters);
        }
        normal_form(&cat, target)
    }

    /// Parses the bracketed grammar `[i,j,…]` and normalizes.
    pub fn parse(text: &str, rank: usize) -> Result<CoxWord> {
        let letters = parse_letters(text)?;
        normal_form(&letters, rank)
    }
}

/// Parses `[a,b,c]` (whitespace allowed) into raw letters without
/// normalizing.
pub fn parse_letters(text: &str) -> Result<Vec<usize>> {
    let bad = |message: String| Error::Parse { line: 0, message };
    let t = text.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| bad(format!("expected a bracketed word, found `{t}`")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<usize>()
                .map_err(|_| bad(format!("bad generator index `{}`", tok.trim())))
        })
        .collect()
}

/// Renders raw letters in the bracketed grammar.
pub fn format_letters(letters: &[usize]) -> String {
    let body: Vec<String> = letters.iter().map(|l| l.to_string()).collect();
    format!("[{}]", body.join(","))
}

impl fmt::Display for CoxWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_letters(&self.letters))
    }
}
