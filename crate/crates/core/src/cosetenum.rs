//! Todd–Coxeter coset enumeration (HLT strategy) for presentations whose
//! generators are all involutions.
//!
//! Every generator is its own inverse, so the table keeps a single column
//! per generator and each definition or deduction fills both ends of an
//! edge. Coincidences are processed immediately with a union-find on
//! cosets. Cosets are numbered in order of first definition after dead ones
//! are removed; coset 0 is the subgroup itself.
//!
//! Words are traced right-to-left, matching the left action used
//! everywhere else, so `perms[i][x] = table[x][i]` is directly a
//! premaniplex whose base flag 0 has stabilizer the given subgroup.

use serde::{Deserialize, Serialize};

use crate::coxword::CoxWord;
use crate::error::{Error, Result};
use crate::premaniplex::Premaniplex;

/// Default limit on the number of cosets ever defined.
pub const DEFAULT_CAP: usize = 1_000_000;

const UNDEF: usize = usize::MAX;

/// A group on `generator_count` involutions with extra relators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub generator_count: usize,
    pub relators: Vec<Vec<usize>>,
}

impl Presentation {
    /// `C^n`: involutions plus `(r_i r_j)^2` for `|i - j| >= 2`.
    pub fn string_coxeter(n: usize) -> Self {
        let mut relators = Vec::new();
        for i in 0..n {
            for j in (i + 2)..n {
                relators.push(vec![i, j, i, j]);
            }
        }
        Presentation {
            generator_count: n,
            relators,
        }
    }

    /// The string Coxeter group `[p_1, …, p_{n-1}]`.
    pub fn coxeter(schlafli: &[usize]) -> Result<Self> {
        if let Some(&p) = schlafli.iter().find(|&&p| p < 2) {
            return Err(Error::InvalidArgument(format!(
                "Schläfli entries must be at least 2, got {p}"
            )));
        }
        let mut pres = Self::string_coxeter(schlafli.len() + 1);
        for (i, &p) in schlafli.iter().enumerate() {
            let mut r = Vec::with_capacity(2 * p);
            for _ in 0..p {
                r.push(i);
                r.push(i + 1);
            }
            pres.relators.push(r);
        }
        Ok(pres)
    }

    pub fn with_relator(mut self, relator: Vec<usize>) -> Result<Self> {
        self.check(&relator)?;
        self.relators.push(relator);
        Ok(self)
    }

    fn check(&self, word: &[usize]) -> Result<()> {
        match word.iter().find(|&&l| l >= self.generator_count) {
            Some(&letter) => Err(Error::InvalidGenerator {
                letter,
                rank: self.generator_count,
            }),
            None => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Complete,
    Capped,
}

/// The coset table; when `Complete` every entry is defined and each column
/// is an involution on cosets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetTable {
    pub generator_count: usize,
    /// `rows[c][x]` is the coset `c · r_x`; `None` only when capped.
    pub rows: Vec<Vec<Option<usize>>>,
    pub status: Status,
    /// Total number of cosets defined during the run, including dead ones.
    pub defined: usize,
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.rows.len()
    }

    pub fn is_complete(&self) -> bool {
        self.status == Status::Complete
    }

    /// The coset graph as a premaniplex-shaped array `perms[x][coset]`.
    /// Fails when the table is capped.
    pub fn to_perms(&self) -> Result<Vec<Vec<usize>>> {
        if !self.is_complete() {
            return Err(Error::Capped { cap: self.defined });
        }
        Ok((0..self.generator_count)
            .map(|x| {
                self.rows
                    .iter()
                    .map(|row| row[x].expect("complete table"))
                    .collect()
            })
            .collect())
    }

    /// The coset reached from `coset` by the word (right-to-left), if
    /// every step is defined.
    pub fn trace(&self, coset: usize, letters: &[usize]) -> Option<usize> {
        letters
            .iter()
            .rev()
            .try_fold(coset, |c, &x| self.rows[c][x])
    }
}

struct Enumerator {
    gens: usize,
    table: Vec<usize>,
    parent: Vec<usize>,
    queue: Vec<usize>,
    cap: usize,
}

struct CapHit;

impl Enumerator {
    fn new(gens: usize, cap: usize) -> Self {
        Enumerator {
            gens,
            table: vec![UNDEF; gens],
            parent: vec![0],
            queue: Vec::new(),
            cap,
        }
    }

    fn count(&self) -> usize {
        self.parent.len()
    }

    #[inline]
    fn get(&self, c: usize, x: usize) -> usize {
        self.table[c * self.gens + x]
    }

    #[inline]
    fn set(&mut self, c: usize, x: usize, v: usize) {
        self.table[c * self.gens + x] = v;
    }

    fn alive(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, f: usize, x: usize) -> std::result::Result<(), CapHit> {
        if self.count() >= self.cap {
            return Err(CapHit);
        }
        let n = self.count();
        self.parent.push(n);
        self.table.extend(std::iter::repeat_n(UNDEF, self.gens));
        self.set(f, x, n);
        self.set(n, x, f);
        Ok(())
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut x = c;
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.merge(a, b);
        let mut head = 0;
        while head < self.queue.len() {
            let gamma = self.queue[head];
            head += 1;
            for x in 0..self.gens {
                let delta = self.get(gamma, x);
                if delta == UNDEF {
                    continue;
                }
                self.set(delta, x, UNDEF);
                let mu = self.rep(gamma);
                let nu = self.rep(delta);
                let mu_x = self.get(mu, x);
                let nu_x = self.get(nu, x);
                if mu_x != UNDEF {
                    self.merge(nu, mu_x);
                } else if nu_x != UNDEF {
                    self.merge(mu, nu_x);
                } else {
                    self.set(mu, x, nu);
                    self.set(nu, x, mu);
                }
            }
        }
        self.queue.clear();
    }

    /// Scans `seq` (in tracing order) at `alpha`, defining cosets as needed.
    fn scan_and_fill(&mut self, alpha: usize, seq: &[usize]) -> std::result::Result<(), CapHit> {
        let mut f = alpha;
        let mut b = alpha;
        let mut i = 0;
        let mut j = seq.len();
        loop {
            while i < j && self.get(f, seq[i]) != UNDEF {
                f = self.get(f, seq[i]);
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j > i && self.get(b, seq[j - 1]) != UNDEF {
                b = self.get(b, seq[j - 1]);
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                self.set(f, seq[i], b);
                self.set(b, seq[i], f);
                return Ok(());
            }
            self.define(f, seq[i])?;
        }
    }

    fn run(
        &mut self,
        relators: &[Vec<usize>],
        subgroup: &[Vec<usize>],
    ) -> std::result::Result<(), CapHit> {
        for w in subgroup {
            self.scan_and_fill(0, w)?;
        }
        let mut alpha = 0;
        while alpha < self.count() {
            if self.alive(alpha) {
                for r in relators {
                    self.scan_and_fill(alpha, r)?;
                    if !self.alive(alpha) {
                        break;
                    }
                }
                if self.alive(alpha) {
                    for x in 0..self.gens {
                        if self.get(alpha, x) == UNDEF {
                            self.define(alpha, x)?;
                        }
                    }
                }
            }
            alpha += 1;
        }
        Ok(())
    }

    fn finish(mut self, status: Status) -> CosetTable {
        let defined = self.count();
        let mut number = vec![UNDEF; defined];
        let mut next = 0;
        for c in 0..defined {
            if self.alive(c) {
                number[c] = next;
                next += 1;
            }
        }
        let mut rows = Vec::with_capacity(next);
        for c in 0..defined {
            if !self.alive(c) {
                continue;
            }
            let row = (0..self.gens)
                .map(|x| {
                    let v = self.get(c, x);
                    (v != UNDEF).then(|| {
                        let r = self.rep(v);
                        number[r]
                    })
                })
                .collect();
            rows.push(row);
        }
        CosetTable {
            generator_count: self.gens,
            rows,
            status,
            defined,
        }
    }
}

/// Enumerates the cosets of `⟨subgroup⟩` in the presented group, defining at
/// most `cap` cosets.
pub fn todd_coxeter(
    pres: &Presentation,
    subgroup: &[Vec<usize>],
    cap: usize,
) -> Result<CosetTable> {
    if cap == 0 {
        return Err(Error::InvalidArgument("cap must be positive".into()));
    }
    for w in pres.relators.iter().chain(subgroup) {
        pres.check(w)?;
    }
    let rev = |w: &Vec<usize>| w.iter().rev().copied().collect::<Vec<_>>();
    let relators: Vec<Vec<usize>> = pres.relators.iter().map(rev).collect();
    let subgroup: Vec<Vec<usize>> = subgroup.iter().map(rev).collect();
    let mut e = Enumerator::new(pres.generator_count, cap);
    let status = match e.run(&relators, &subgroup) {
        Ok(()) => Status::Complete,
        Err(CapHit) => Status::Capped,
    };
    Ok(e.finish(status))
}

/// Flag graph of the regular polytope or map with the given Schläfli
/// symbol, optionally with extra relators (e.g. a Petrie relator).
pub fn coxeter_flag_graph(
    schlafli: &[usize],
    extra_relators: &[Vec<usize>],
    cap: usize,
) -> Result<Premaniplex> {
    let mut pres = Presentation::coxeter(schlafli)?;
    for r in extra_relators {
        pres = pres.with_relator(r.clone())?;
    }
    let table = todd_coxeter(&pres, &[], cap)?;
    Premaniplex::new(table.to_perms()?)
}

/// The coset graph `C^n / ⟨generators⟩` as a premaniplex with base flag 0.
pub fn realize_schreier(n: usize, generators: &[CoxWord], cap: usize) -> Result<Premaniplex> {
    if let Some(g) = generators.iter().find(|g| g.rank() != n) {
        return Err(Error::RankMismatch {
            expected: n,
            found: g.rank(),
        });
    }
    let subgroup: Vec<Vec<usize>> = generators.iter().map(|g| g.letters().to_vec()).collect();
    let table = todd_coxeter(&Presentation::string_coxeter(n), &subgroup, cap)?;
    Premaniplex::new(table.to_perms()?)
}
