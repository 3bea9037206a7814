//! Voltage operators `(Y, η)` with voltages in `C^n`, and the operated
//! premaniplex `X ⋊ Y`.
//!
//! Voltages are anti-homomorphic on paths: walking darts `d_1, …, d_k` in
//! order gives `η(d_k) ⋯ η(d_1)`. Products index the flag `(x, y)` as
//! `x · |Y| + y`. The base flag of `Y` is always flag 0.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cosetenum::{todd_coxeter, Presentation, Status};
use crate::coxword::{normal_form, CoxWord};
use crate::error::{Error, Result};
use crate::premaniplex::{Path, Premaniplex};

/// An `(n, m)`-operator: a rank `m` premaniplex `Y` with a voltage in
/// `C^n` on each dart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VoltageOperator {
    source_rank: usize,
    y: Premaniplex,
    /// `voltages[color][flag]`.
    voltages: Vec<Vec<CoxWord>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum OperatorViolation {
    Shape(String),
    WrongRank {
        flag: usize,
        color: usize,
        found: usize,
    },
    NotInverse {
        flag: usize,
        color: usize,
    },
    NotInvolution {
        flag: usize,
        color: usize,
    },
    /// The closed path `i, j, i, j` at `flag` has a nontrivial voltage.
    SquareNotTrivial {
        flag: usize,
        colors: (usize, usize),
    },
}

impl fmt::Display for OperatorViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorViolation::Shape(s) => write!(f, "{s}"),
            OperatorViolation::WrongRank { flag, color, found } => {
                write!(f, "voltage of dart ({flag}, {color}) has rank {found}")
            }
            OperatorViolation::NotInverse { flag, color } => write!(
                f,
                "voltage of dart ({flag}, {color}) is not the inverse of its reverse"
            ),
            OperatorViolation::NotInvolution { flag, color } => {
                write!(
                    f,
                    "semi-edge voltage at ({flag}, {color}) is not an involution"
                )
            }
            OperatorViolation::SquareNotTrivial {
                flag,
                colors: (i, j),
            } => write!(
                f,
                "closed path {i},{j},{i},{j} at flag {flag} has nontrivial voltage"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct OperatorReport {
    pub violations: Vec<OperatorViolation>,
}

impl OperatorReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for OperatorReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        for (k, v) in self.violations.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks the dart conditions on raw operator parts. `y` is assumed to be
/// a valid premaniplex.
pub fn validate_operator(
    source_rank: usize,
    y: &Premaniplex,
    voltages: &[Vec<CoxWord>],
) -> OperatorReport {
    let mut violations = Vec::new();
    if voltages.len() != y.rank() {
        violations.push(OperatorViolation::Shape(format!(
            "expected {} voltage rows, found {}",
            y.rank(),
            voltages.len()
        )));
        return OperatorReport { violations };
    }
    for (i, row) in voltages.iter().enumerate() {
        if row.len() != y.flag_count() {
            violations.push(OperatorViolation::Shape(format!(
                "voltage row {i} has {} entries, expected {}",
                row.len(),
                y.flag_count()
            )));
        }
    }
    if !violations.is_empty() {
        return OperatorReport { violations };
    }
    for (i, row) in voltages.iter().enumerate() {
        for (flag, w) in row.iter().enumerate() {
            if w.rank() != source_rank {
                violations.push(OperatorViolation::WrongRank {
                    flag,
                    color: i,
                    found: w.rank(),
                });
            }
        }
    }
    if !violations.is_empty() {
        return OperatorReport { violations };
    }
    for i in 0..y.rank() {
        for flag in 0..y.flag_count() {
            let other = y.adj(flag, i);
            let v = &voltages[i][flag];
            if other == flag {
                if !v.is_involution() {
                    violations.push(OperatorViolation::NotInvolution { flag, color: i });
                }
            } else if voltages[i][other] != v.inverse() {
                violations.push(OperatorViolation::NotInverse { flag, color: i });
            }
        }
    }
    for flag in 0..y.flag_count() {
        for i in 0..y.rank() {
            for j in (i + 2)..y.rank() {
                let w = raw_path_voltage(y, voltages, flag, &[i, j, i, j]);
                if !normal_form(&w, source_rank)
                    .map(|w| w.is_identity())
                    .unwrap_or(false)
                {
                    violations.push(OperatorViolation::SquareNotTrivial {
                        flag,
                        colors: (i, j),
                    });
                }
            }
        }
    }
    OperatorReport { violations }
}

/// Unreduced voltage letters of the path from `flag` along `letters`
/// (applied right-to-left).
fn raw_path_voltage(
    y: &Premaniplex,
    voltages: &[Vec<CoxWord>],
    flag: usize,
    letters: &[usize],
) -> Vec<usize> {
    let mut segments: Vec<&[usize]> = Vec::with_capacity(letters.len());
    let mut cur = flag;
    for &c in letters.iter().rev() {
        segments.push(voltages[c][cur].letters());
        cur = y.adj(cur, c);
    }
    segments
        .iter()
        .rev()
        .flat_map(|s| s.iter().copied())
        .collect()
}

impl VoltageOperator {
    /// Builds an operator, rejecting it unless [`validate_operator`] passes.
    pub fn new(source_rank: usize, y: Premaniplex, voltages: Vec<Vec<CoxWord>>) -> Result<Self> {
        if source_rank == 0 {
            return Err(Error::InvalidOperator(
                "source rank must be positive".into(),
            ));
        }
        let report = validate_operator(source_rank, &y, &voltages);
        if !report.is_valid() {
            return Err(Error::InvalidOperator(report.to_string()));
        }
        Ok(VoltageOperator {
            source_rank,
            y,
            voltages,
        })
    }

    /// Builds from voltage letter lists `voltages[color][flag]`.
    pub fn from_letters(
        source_rank: usize,
        y: Premaniplex,
        voltages: &[Vec<Vec<usize>>],
    ) -> Result<Self> {
        let words = voltages
            .iter()
            .map(|row| {
                row.iter()
                    .map(|l| normal_form(l, source_rank))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(source_rank, y, words)
    }

    pub fn source_rank(&self) -> usize {
        self.source_rank
    }

    /// Rank of `Y`, which is the rank of every product.
    pub fn rank(&self) -> usize {
        self.y.rank()
    }

    pub fn flag_count(&self) -> usize {
        self.y.flag_count()
    }

    pub fn premaniplex(&self) -> &Premaniplex {
        &self.y
    }

    pub fn voltage(&self, flag: usize, color: usize) -> &CoxWord {
        &self.voltages[color][flag]
    }

    pub fn voltages(&self) -> &[Vec<CoxWord>] {
        &self.voltages
    }

    pub fn validate(&self) -> OperatorReport {
        validate_operator(self.source_rank, &self.y, &self.voltages)
    }

    /// Voltage of the path from `flag` along raw `letters`.
    pub fn letters_voltage(&self, flag: usize, letters: &[usize]) -> Result<CoxWord> {
        if flag >= self.flag_count() {
            return Err(Error::FlagOutOfRange {
                flag,
                flag_count: self.flag_count(),
            });
        }
        if let Some(&letter) = letters.iter().find(|&&l| l >= self.rank()) {
            return Err(Error::InvalidGenerator {
                letter,
                rank: self.rank(),
            });
        }
        normal_form(
            &raw_path_voltage(&self.y, &self.voltages, flag, letters),
            self.source_rank,
        )
    }
}

/// `η(W) = η(d_k) ⋯ η(d_1)` for the path `W = d_1 ⋯ d_k`.
pub fn voltage_of_path(op: &VoltageOperator, path: &Path) -> Result<CoxWord> {
    if path.word.rank() != op.rank() {
        return Err(Error::RankMismatch {
            expected: op.rank(),
            found: path.word.rank(),
        });
    }
    op.letters_voltage(path.base, path.word.letters())
}

/// `X ⋊ Y`: `(x, y)^i = (η(y, i) x, y^i)`, flag `(x, y)` at `x·|Y| + y`.
pub fn product(x: &Premaniplex, op: &VoltageOperator) -> Result<Premaniplex> {
    if x.rank() != op.source_rank {
        return Err(Error::RankMismatch {
            expected: op.source_rank,
            found: x.rank(),
        });
    }
    let ky = op.flag_count();
    let total = x.flag_count() * ky;
    let perms = (0..op.rank())
        .map(|i| {
            let mut perm = Vec::with_capacity(total);
            for fx in 0..x.flag_count() {
                for fy in 0..ky {
                    let nx = x.apply_letters(fx, op.voltages[i][fy].letters());
                    perm.push(nx * ky + op.y.adj(fy, i));
                }
            }
            perm
        })
        .collect();
    Premaniplex::new(perms)
}

/// Tree voltages `T(y)`: the voltage of the BFS tree path from flag 0.
fn tree_voltages(op: &VoltageOperator) -> Result<Vec<CoxWord>> {
    let tree = op.y.spanning_tree(0)?;
    (0..op.flag_count())
        .map(|f| op.letters_voltage(0, tree.word_letters(f)))
        .collect()
}

/// An equivalent operator whose BFS spanning tree at flag 0 carries only
/// identity voltages: `η'(d) = T(y')⁻¹ η(d) T(y)` for `d: y → y'`.
pub fn normalize(op: &VoltageOperator) -> Result<VoltageOperator> {
    let t = tree_voltages(op)?;
    let voltages = (0..op.rank())
        .map(|i| {
            (0..op.flag_count())
                .map(|f| {
                    let g = op.y.adj(f, i);
                    t[g].inverse().multiply(&op.voltages[i][f])?.multiply(&t[f])
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    VoltageOperator::new(op.source_rank, op.y.clone(), voltages)
}

/// The isomorphism `X ⋊ normalize(op) → X ⋊ op`, `(x, y) ↦ (T(y) x, y)`.
pub fn normalization_map(x: &Premaniplex, op: &VoltageOperator) -> Result<Vec<usize>> {
    let t = tree_voltages(op)?;
    let ky = op.flag_count();
    let mut map = Vec::with_capacity(x.flag_count() * ky);
    for fx in 0..x.flag_count() {
        for (fy, ty) in t.iter().enumerate() {
            map.push(x.apply_word(fx, ty)? * ky + fy);
        }
    }
    Ok(map)
}

/// Composite of `op1 = (Z, ϑ)` followed by `op2 = (Y, η)`: the operator
/// `(Z ⋊ Y, θ)` with `θ((z, y), i) = ϑ(path from z along η(y, i))`, so that
/// `(X ⋊ op1) ⋊ op2 = X ⋊ compose(op1, op2)` with identical flag numbering.
pub fn compose(op1: &VoltageOperator, op2: &VoltageOperator) -> Result<VoltageOperator> {
    let zy = product(&op1.y, op2)?;
    let ky = op2.flag_count();
    let voltages = (0..op2.rank())
        .map(|i| {
            (0..zy.flag_count())
                .map(|f| op1.letters_voltage(f / ky, op2.voltages[i][f % ky].letters()))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    VoltageOperator::new(op1.source_rank, zy, voltages)
}

/// `ζ(w)`: voltage of the closed path at flag 0 with word `w`.
pub fn zeta(op: &VoltageOperator, w: &CoxWord) -> Result<CoxWord> {
    let end = op.y.apply_word(0, w)?;
    if end != 0 {
        return Err(Error::NotStabilizing {
            word: w.to_string(),
            flag: 0,
        });
    }
    voltage_of_path(op, &Path::new(0, w.clone()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "answer", rename_all = "lowercase")]
pub enum Connectivity {
    Yes,
    /// `index` is `[C^n : ζ(L)]` when it was determined to be finite.
    No {
        index: Option<usize>,
    },
    Inconclusive {
        cap: usize,
    },
}

impl fmt::Display for Connectivity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Connectivity::Yes => write!(f, "yes"),
            Connectivity::No { index: Some(i) } => write!(f, "no (index {i})"),
            Connectivity::No { index: None } => write!(f, "no"),
            Connectivity::Inconclusive { cap } => write!(f, "inconclusive (cap {cap})"),
        }
    }
}

/// Cap used only to report an index once non-surjectivity is known.
const WITNESS_CAP: usize = 10_000;

/// Whether `X ⋊ Y` is connected for every connected `X`: `Y` connected and
/// `ζ(Stab(y0)) = C^n`.
///
/// A subgroup whose letter-parity vectors do not span `F_2^n` is proper,
/// since every relator has even letter counts; that case answers `No`
/// without depending on the cap.
pub fn preserves_connectivity(op: &VoltageOperator, cap: usize) -> Connectivity {
    if !op.y.is_connected() {
        return Connectivity::No { index: None };
    }
    let images = match stabilizer_images(op) {
        Ok(images) => images,
        Err(_) => return Connectivity::No { index: None },
    };
    let n = op.source_rank;
    let subgroup: Vec<Vec<usize>> = images.iter().map(|w| w.letters().to_vec()).collect();
    let pres = Presentation::string_coxeter(n);
    if !parities_span(&images, n) {
        let index = todd_coxeter(&pres, &subgroup, cap.min(WITNESS_CAP))
            .ok()
            .filter(|t| t.status == Status::Complete)
            .map(|t| t.index());
        return Connectivity::No { index };
    }
    match todd_coxeter(&pres, &subgroup, cap) {
        Ok(t) if t.status == Status::Complete && t.index() == 1 => Connectivity::Yes,
        Ok(t) if t.status == Status::Complete => Connectivity::No {
            index: Some(t.index()),
        },
        _ => Connectivity::Inconclusive { cap },
    }
}

/// `ζ` applied to the Schreier generators of `Stab(y0)`.
pub fn stabilizer_images(op: &VoltageOperator) -> Result<Vec<CoxWord>> {
    op.y.schreier_generators(0)?
        .generators
        .iter()
        .map(|g| zeta(op, g))
        .collect()
}

fn parities_span(words: &[CoxWord], n: usize) -> bool {
    let mut rows: Vec<Vec<bool>> = words
        .iter()
        .map(|w| {
            let mut v = vec![false; n];
            for &l in w.letters() {
                v[l] ^= true;
            }
            v
        })
        .collect();
    let mut rank = 0;
    for col in 0..n {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col]) else {
            continue;
        };
        rows.swap(rank, pivot);
        let p = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] {
                for (a, b) in row.iter_mut().zip(&p) {
                    *a ^= *b;
                }
            }
        }
        rank += 1;
    }
    rank == n
}
