//! Premaniplexes stored as one involution per color on a dense flag set.
//!
//! Words act on the left and are read right-to-left: the word `[a, b, c]`
//! sends a flag `x` to `((x^c)^b)^a`. Every traversal in this crate
//! (spanning trees, component order, orbit representatives) breaks ties by
//! least flag index so that results are reproducible.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coxword::{normal_form, CoxWord};
use crate::error::{Error, Result};
use crate::symmetry::FlagPermutation;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Premaniplex {
    rank: usize,
    perms: Vec<Vec<usize>>,
}

/// A single failure of the premaniplex axioms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    WrongLength {
        color: usize,
        len: usize,
        expected: usize,
    },
    OutOfRange {
        color: usize,
        flag: usize,
        image: usize,
    },
    NotInvolution {
        color: usize,
        flag: usize,
        image: usize,
        back: usize,
    },
    NotCommuting {
        i: usize,
        j: usize,
        flag: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::WrongLength {
                color,
                len,
                expected,
            } => {
                write!(f, "perm {color}: {len} entries, expected {expected}")
            }
            Violation::OutOfRange { color, flag, image } => {
                write!(f, "perm {color}: flag {flag} maps to out-of-range {image}")
            }
            Violation::NotInvolution {
                color,
                flag,
                image,
                back,
            } => write!(
                f,
                "perm {color}: not an involution at flag {flag} ({flag} -> {image} -> {back})"
            ),
            Violation::NotCommuting { i, j, flag } => {
                write!(
                    f,
                    "colors {i},{j}: alternating 4-path at flag {flag} is not closed"
                )
            }
        }
    }
}

/// Every violated entry of a candidate premaniplex. Empty iff valid.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return writeln!(f, "valid");
        }
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks the premaniplex axioms on raw color arrays.
pub fn validate_perms(rank: usize, flag_count: usize, perms: &[Vec<usize>]) -> ValidationReport {
    let mut violations = Vec::new();
    if perms.len() != rank {
        violations.push(Violation::WrongLength {
            color: perms.len().min(rank),
            len: perms.len(),
            expected: rank,
        });
        return ValidationReport { violations };
    }
    let mut shape_ok = true;
    for (color, perm) in perms.iter().enumerate() {
        if perm.len() != flag_count {
            violations.push(Violation::WrongLength {
                color,
                len: perm.len(),
                expected: flag_count,
            });
            shape_ok = false;
            continue;
        }
        for (flag, &image) in perm.iter().enumerate() {
            if image >= flag_count {
                violations.push(Violation::OutOfRange { color, flag, image });
                shape_ok = false;
            }
        }
    }
    if !shape_ok {
        return ValidationReport { violations };
    }
    for (color, perm) in perms.iter().enumerate() {
        for (flag, &image) in perm.iter().enumerate() {
            let back = perm[image];
            if back != flag {
                violations.push(Violation::NotInvolution {
                    color,
                    flag,
                    image,
                    back,
                });
            }
        }
    }
    for i in 0..rank {
        for j in (i + 2)..rank {
            for flag in 0..flag_count {
                let mut x = flag;
                for c in [j, i, j, i] {
                    x = perms[c][x];
                }
                if x != flag {
                    violations.push(Violation::NotCommuting { i, j, flag });
                }
            }
        }
    }
    ValidationReport { violations }
}

/// Result of the maniplex test with human-readable reasons when false.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManiplexCheck {
    pub is_maniplex: bool,
    pub reasons: Vec<String>,
}

/// A path in the homotopy sense: a base flag and a word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    pub base: usize,
    pub word: CoxWord,
}

impl Path {
    pub fn new(base: usize, word: CoxWord) -> Self {
        Path { base, word }
    }

    pub fn terminal(&self, p: &Premaniplex) -> Result<usize> {
        p.apply_word(self.base, &self.word)
    }

    /// Two paths are homotopic iff they share a base and their words are
    /// equal in `C^n`.
    pub fn homotopic(&self, other: &Path) -> bool {
        self.base == other.base && self.word == other.word
    }
}

/// A BFS spanning tree rooted at `base`, exploring colors in increasing
/// order and never traversing semi-edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    pub base: usize,
    /// Tree darts `(parent, color)` in discovery order.
    pub darts: Vec<(usize, usize)>,
    /// `parent[x] = Some((p, i))` when `x = p^i` was discovered from `p`.
    pub parent: Vec<Option<(usize, usize)>>,
    /// Raw letters of the tree word from `base` to each flag.
    words: Vec<Vec<usize>>,
}

impl SpanningTree {
    pub fn is_tree_dart(&self, flag: usize, color: usize, image: usize) -> bool {
        self.parent[image] == Some((flag, color)) || self.parent[flag] == Some((image, color))
    }

    /// Letters `w` with `apply_word(base, w) = flag`, unreduced.
    pub fn word_letters(&self, flag: usize) -> &[usize] {
        &self.words[flag]
    }

    pub fn word(&self, rank: usize, flag: usize) -> CoxWord {
        normal_form(&self.words[flag], rank).expect("tree letters are valid colors")
    }
}

/// Finitely many generators of the stabilizer of `base` in `C^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchreierSubgroup {
    pub base: usize,
    pub generators: Vec<CoxWord>,
}

/// A quotient premaniplex together with its projection `flag -> orbit`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    pub premaniplex: Premaniplex,
    pub projection: Vec<usize>,
}

impl Premaniplex {
    /// Validates and wraps the color arrays `perms[i][x] = x^i`.
    pub fn new(perms: Vec<Vec<usize>>) -> Result<Self> {
        let rank = perms.len();
        if rank == 0 {
            return Err(Error::InvalidPremaniplex("rank must be at least 1".into()));
        }
        let flag_count = perms[0].len();
        if flag_count == 0 {
            return Err(Error::InvalidPremaniplex(
                "at least one flag is required".into(),
            ));
        }
        let report = validate_perms(rank, flag_count, &perms);
        if let Some(v) = report.violations.first() {
            return Err(Error::InvalidPremaniplex(v.to_string()));
        }
        Ok(Premaniplex { rank, perms })
    }

    pub(crate) fn from_perms_unchecked(perms: Vec<Vec<usize>>) -> Self {
        debug_assert!(validate_perms(perms.len(), perms[0].len(), &perms).is_valid());
        Premaniplex {
            rank: perms.len(),
            perms,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn flag_count(&self) -> usize {
        self.perms[0].len()
    }

    pub fn perms(&self) -> &[Vec<usize>] {
        &self.perms
    }

    /// `x^i`.
    #[inline]
    pub fn adj(&self, flag: usize, color: usize) -> usize {
        self.perms[color][flag]
    }

    pub fn validate(&self) -> ValidationReport {
        validate_perms(self.rank, self.flag_count(), &self.perms)
    }

    fn check_flag(&self, flag: usize) -> Result<()> {
        if flag >= self.flag_count() {
            return Err(Error::FlagOutOfRange {
                flag,
                flag_count: self.flag_count(),
            });
        }
        Ok(())
    }

    /// Left action of `w` on `flag`; letters are applied right-to-left.
    pub fn apply_word(&self, flag: usize, w: &CoxWord) -> Result<usize> {
        if w.rank() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: w.rank(),
            });
        }
        self.check_flag(flag)?;
        Ok(self.apply_letters(flag, w.letters()))
    }

    pub(crate) fn apply_letters(&self, flag: usize, letters: &[usize]) -> usize {
        letters.iter().rev().fold(flag, |x, &c| self.perms[c][x])
    }

    pub fn is_semi_edge(&self, flag: usize, color: usize) -> bool {
        self.perms[color][flag] == flag
    }

    /// Connected components, each sorted, ordered by least flag.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let k = self.flag_count();
        let mut seen = vec![false; k];
        let mut out = Vec::new();
        for start in 0..k {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for perm in &self.perms {
                    let y = perm[x];
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                        queue.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        let components = self.components().len();
        if components != 1 {
            return Err(Error::Disconnected { components });
        }
        Ok(())
    }

    /// The component containing `flag` as a premaniplex of its own, flags
    /// renumbered in increasing order of the original index. Returns the
    /// original index of each new flag.
    pub fn component_of(&self, flag: usize) -> Result<(Premaniplex, Vec<usize>)> {
        self.check_flag(flag)?;
        let comp = self
            .components()
            .into_iter()
            .find(|c| c.binary_search(&flag).is_ok())
            .expect("every flag lies in a component");
        let mut index = vec![usize::MAX; self.flag_count()];
        for (new, &old) in comp.iter().enumerate() {
            index[old] = new;
        }
        let perms = self
            .perms
            .iter()
            .map(|perm| comp.iter().map(|&old| index[perm[old]]).collect())
            .collect();
        Ok((Premaniplex::from_perms_unchecked(perms), comp))
    }

    pub fn is_maniplex(&self) -> ManiplexCheck {
        let mut reasons = Vec::new();
        let components = self.components().len();
        if components != 1 {
            reasons.push(format!("disconnected ({components} components)"));
        }
        let k = self.flag_count();
        if let Some((x, i)) = (0..k)
            .flat_map(|x| (0..self.rank).map(move |i| (x, i)))
            .find(|&(x, i)| self.perms[i][x] == x)
        {
            reasons.push(format!("semi-edge of color {i} at flag {x}"));
        }
        'outer: for x in 0..k {
            for i in 0..self.rank {
                for j in (i + 1)..self.rank {
                    if self.perms[i][x] == self.perms[j][x] {
                        reasons.push(format!("parallel edges of colors {i},{j} at flag {x}"));
                        break 'outer;
                    }
                }
            }
        }
        ManiplexCheck {
            is_maniplex: reasons.is_empty(),
            reasons,
        }
    }

    pub fn spanning_tree(&self, base: usize) -> Result<SpanningTree> {
        self.check_flag(base)?;
        self.require_connected()?;
        let k = self.flag_count();
        let mut parent = vec![None; k];
        let mut words: Vec<Vec<usize>> = vec![Vec::new(); k];
        let mut seen = vec![false; k];
        let mut darts = Vec::with_capacity(k.saturating_sub(1));
        seen[base] = true;
        let mut queue = VecDeque::from([base]);
        while let Some(x) = queue.pop_front() {
            for (i, perm) in self.perms.iter().enumerate() {
                let y = perm[x];
                if seen[y] {
                    continue;
                }
                seen[y] = true;
                parent[y] = Some((x, i));
                let mut w = Vec::with_capacity(words[x].len() + 1);
                w.push(i);
                w.extend_from_slice(&words[x]);
                words[y] = w;
                darts.push((x, i));
                queue.push_back(y);
            }
        }
        Ok(SpanningTree {
            base,
            darts,
            parent,
            words,
        })
    }

    /// Generators of `Stab(base)` read off the non-tree darts of the BFS
    /// spanning tree: for a dart `(x, i)` the word is
    /// `tree(x^i)⁻¹ · r_i · tree(x)`. Each edge contributes once (from its
    /// lower endpoint); identity and duplicate words are dropped.
    pub fn schreier_generators(&self, base: usize) -> Result<SchreierSubgroup> {
        let tree = self.spanning_tree(base)?;
        let mut generators: Vec<CoxWord> = Vec::new();
        for x in 0..self.flag_count() {
            for i in 0..self.rank {
                let y = self.perms[i][x];
                if y < x || tree.is_tree_dart(x, i, y) {
                    continue;
                }
                let mut letters: Vec<usize> = tree.words[y].iter().rev().copied().collect();
                letters.push(i);
                letters.extend_from_slice(&tree.words[x]);
                let g = normal_form(&letters, self.rank)?;
                if !g.is_identity() && !generators.contains(&g) {
                    generators.push(g);
                }
            }
        }
        Ok(SchreierSubgroup { base, generators })
    }

    /// Quotient by the group generated by `generators`, each of which must
    /// be an automorphism. Orbits are numbered by least flag.
    pub fn quotient(&self, generators: &[FlagPermutation]) -> Result<Quotient> {
        let k = self.flag_count();
        for (idx, g) in generators.iter().enumerate() {
            if !g.is_automorphism_of(self) {
                return Err(Error::NotAutomorphism(format!("element {idx}")));
            }
        }
        let mut uf: Vec<usize> = (0..k).collect();
        fn find(uf: &mut [usize], mut x: usize) -> usize {
            while uf[x] != x {
                uf[x] = uf[uf[x]];
                x = uf[x];
            }
            x
        }
        for g in generators {
            for x in 0..k {
                let a = find(&mut uf, x);
                let b = find(&mut uf, g.image(x));
                if a != b {
                    let (lo, hi) = (a.min(b), a.max(b));
                    uf[hi] = lo;
                }
            }
        }
        let mut orbit_of_root = vec![usize::MAX; k];
        let mut projection = vec![0; k];
        let mut count = 0;
        for x in 0..k {
            let r = find(&mut uf, x);
            if orbit_of_root[r] == usize::MAX {
                orbit_of_root[r] = count;
                count += 1;
            }
            projection[x] = orbit_of_root[r];
        }
        let mut perms = vec![vec![usize::MAX; count]; self.rank];
        for x in 0..k {
            for i in 0..self.rank {
                perms[i][projection[x]] = projection[self.perms[i][x]];
            }
        }
        Ok(Quotient {
            premaniplex: Premaniplex::from_perms_unchecked(perms),
            projection,
        })
    }

    /// Disjoint union; flags of `other` are shifted by `self.flag_count()`.
    pub fn disjoint_union(&self, other: &Premaniplex) -> Result<Premaniplex> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: other.rank,
            });
        }
        let shift = self.flag_count();
        let perms = self
            .perms
            .iter()
            .zip(&other.perms)
            .map(|(a, b)| {
                a.iter()
                    .copied()
                    .chain(b.iter().map(|&y| y + shift))
                    .collect()
            })
            .collect();
        Ok(Premaniplex::from_perms_unchecked(perms))
    }

    /// `1^n`: one flag, every color a semi-edge.
    pub fn one_vertex(rank: usize) -> Result<Premaniplex> {
        if rank == 0 {
            return Err(Error::InvalidArgument("rank must be at least 1".into()));
        }
        Ok(Premaniplex::from_perms_unchecked(vec![vec![0]; rank]))
    }

    /// `2_I`: two flags; colors in `semi` are semi-edges at both flags, the
    /// remaining colors swap them.
    pub fn two_flag(rank: usize, semi: &[usize]) -> Result<Premaniplex> {
        if rank == 0 {
            return Err(Error::InvalidArgument("rank must be at least 1".into()));
        }
        if let Some(&c) = semi.iter().find(|&&c| c >= rank) {
            return Err(Error::InvalidArgument(format!(
                "color {c} is out of range for rank {rank}"
            )));
        }
        let perms = (0..rank)
            .map(|i| {
                if semi.contains(&i) {
                    vec![0, 1]
                } else {
                    vec![1, 0]
                }
            })
            .collect();
        Ok(Premaniplex::from_perms_unchecked(perms))
    }

    /// Flag graph of a `p`-gon: `2p` flags in a cycle alternating colors
    /// 0 and 1, with color 0 pairing `2j` and `2j+1`.
    pub fn polygon(p: usize) -> Result<Premaniplex> {
        if p < 2 {
            return Err(Error::InvalidArgument(format!(
                "polygon needs p >= 2, got {p}"
            )));
        }
        let k = 2 * p;
        let zero = (0..k).map(|x| x ^ 1).collect();
        let one = (0..k)
            .map(|x| {
                if x % 2 == 1 {
                    (x + 1) % k
                } else {
                    (x + k - 1) % k
                }
            })
            .collect();
        Ok(Premaniplex::from_perms_unchecked(vec![zero, one]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(rank: usize, l: &[usize]) -> CoxWord {
        CoxWord::new(rank, l).unwrap()
    }

    #[test]
    fn validate_examples() {
        let one = Premaniplex::one_vertex(3).unwrap();
        assert!(one.validate().is_valid());

        let swap = vec![1, 0];
        let id = vec![0, 1];
        let r = validate_perms(3, 2, &[swap.clone(), swap.clone(), id.clone()]);
        assert!(r.is_valid());

        let p = Premaniplex::new(vec![swap.clone(), id.clone(), swap.clone()]).unwrap();
        let check = p.is_maniplex();
        assert!(!check.is_maniplex);
        assert!(check.reasons.iter().any(|r| r.contains("parallel")));
    }

    #[test]
    fn validate_reports_each_violation() {
        // color 0 is not an involution; colors 0,2 fail to commute
        let r = validate_perms(3, 3, &[vec![1, 2, 0], vec![0, 1, 2], vec![1, 0, 2]]);
        assert!(r.violations.iter().any(|v| matches!(
            v,
            Violation::NotInvolution {
                color: 0,
                flag: 0,
                ..
            }
        )));
        let r = validate_perms(3, 3, &[vec![1, 0, 2], vec![0, 1, 2], vec![0, 2, 1]]);
        assert!(r
            .violations
            .iter()
            .any(|v| matches!(v, Violation::NotCommuting { i: 0, j: 2, .. })));
        let r = validate_perms(2, 2, &[vec![1, 0], vec![0, 5]]);
        assert!(matches!(
            r.violations[0],
            Violation::OutOfRange {
                color: 1,
                flag: 1,
                image: 5
            }
        ));
        assert!(Premaniplex::new(vec![vec![1, 2, 0]]).is_err());
    }

    #[test]
    fn maniplex_examples() {
        assert!(
            !Premaniplex::one_vertex(3)
                .unwrap()
                .is_maniplex()
                .is_maniplex
        );
        let two_empty = Premaniplex::two_flag(3, &[]).unwrap();
        let check = two_empty.is_maniplex();
        assert!(!check.is_maniplex);
        assert!(check.reasons[0].contains("parallel"));
        assert!(Premaniplex::polygon(4).unwrap().is_maniplex().is_maniplex);
    }

    #[test]
    fn apply_word_examples() {
        let sq = Premaniplex::polygon(4).unwrap();
        assert_eq!(sq.apply_word(3, &CoxWord::identity(2)).unwrap(), 3);
        assert_eq!(sq.apply_word(0, &w(2, &[0])).unwrap(), sq.adj(0, 0));
        assert_eq!(sq.apply_letters(5, &[1, 1]), 5);
        // right-to-left: [1,0] applies 0 first
        assert_eq!(
            sq.apply_word(0, &w(2, &[1, 0])).unwrap(),
            sq.adj(sq.adj(0, 0), 1)
        );
        assert!(sq.apply_word(0, &w(3, &[0])).is_err());
    }

    #[test]
    fn components_examples() {
        let tri = Premaniplex::polygon(3).unwrap();
        let two = tri.disjoint_union(&tri).unwrap();
        let comps = two.components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0], (0..6).collect::<Vec<_>>());
        assert_eq!(comps[1], (6..12).collect::<Vec<_>>());
        assert_eq!(Premaniplex::one_vertex(4).unwrap().components().len(), 1);
        let (c, map) = two.component_of(7).unwrap();
        assert_eq!(c, tri);
        assert_eq!(map, (6..12).collect::<Vec<_>>());
    }

    #[test]
    fn spanning_tree_examples() {
        assert!(Premaniplex::one_vertex(3)
            .unwrap()
            .spanning_tree(0)
            .unwrap()
            .darts
            .is_empty());
        let tri = Premaniplex::polygon(3).unwrap();
        let t = tri.spanning_tree(0).unwrap();
        assert_eq!(t.darts.len(), 5);
        for x in 0..6 {
            assert_eq!(tri.apply_letters(0, t.word_letters(x)), x);
        }
        let two = tri.disjoint_union(&tri).unwrap();
        assert!(matches!(
            two.spanning_tree(0),
            Err(Error::Disconnected { components: 2 })
        ));
    }

    #[test]
    fn schreier_examples() {
        let one = Premaniplex::one_vertex(3).unwrap();
        let s = one.schreier_generators(0).unwrap();
        assert_eq!(s.generators, vec![w(3, &[0]), w(3, &[1]), w(3, &[2])]);

        let t = Premaniplex::two_flag(3, &[0, 1]).unwrap();
        let s = t.schreier_generators(0).unwrap();
        let expected = [
            w(3, &[0]),
            w(3, &[1]),
            w(3, &[1]).conjugate(&w(3, &[2])).unwrap(),
        ];
        assert_eq!(s.generators.len(), 3);
        for g in &expected {
            assert!(s.generators.contains(g), "missing {g}");
        }

        for p in 3..7 {
            let poly = Premaniplex::polygon(p).unwrap();
            let s = poly.schreier_generators(0).unwrap();
            for g in &s.generators {
                assert_eq!(poly.apply_word(0, g).unwrap(), 0);
            }
            assert!(s.generators.iter().any(|g| g.len() == 2 * p));
        }
    }

    #[test]
    fn polygon_builder() {
        let sq = Premaniplex::polygon(4).unwrap();
        assert_eq!(sq.flag_count(), 8);
        assert!(sq.validate().is_valid());
        assert!(Premaniplex::polygon(1).is_err());
        assert!(Premaniplex::two_flag(3, &[3]).is_err());
    }

    #[test]
    fn paths_and_homotopy() {
        let sq = Premaniplex::polygon(4).unwrap();
        let a = Path::new(0, CoxWord::new(2, &[0, 1, 1]).unwrap());
        let b = Path::new(0, w(2, &[0]));
        assert!(a.homotopic(&b));
        assert_eq!(a.terminal(&sq).unwrap(), 1);
    }
}
