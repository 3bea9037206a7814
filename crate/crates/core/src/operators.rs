//! Built-in voltage operators.
//!
//! Every table lists edges (identity voltage unless stated) and semi-edges
//! with their voltages; unlisted darts are identity semi-edges. Base flags
//! are always flag 0.

use crate::coxword::CoxWord;
use crate::error::{Error, Result};
use crate::premaniplex::Premaniplex;
use crate::voltage::{compose, VoltageOperator};

struct Table {
    source_rank: usize,
    perms: Vec<Vec<usize>>,
    volts: Vec<Vec<Vec<usize>>>,
}

impl Table {
    fn new(source_rank: usize, rank: usize, flags: usize) -> Self {
        Table {
            source_rank,
            perms: vec![(0..flags).collect(); rank],
            volts: vec![vec![Vec::new(); flags]; rank],
        }
    }

    fn edge(&mut self, color: usize, a: usize, b: usize) -> &mut Self {
        self.perms[color][a] = b;
        self.perms[color][b] = a;
        self
    }

    fn semi(&mut self, flag: usize, color: usize, letters: &[usize]) -> &mut Self {
        self.volts[color][flag] = letters.to_vec();
        self
    }

    fn build(&self) -> Result<VoltageOperator> {
        let y = Premaniplex::new(self.perms.clone())?;
        VoltageOperator::from_letters(self.source_rank, y, &self.volts)
    }
}

/// `1^n` with `r_i ↦ r_i`; its product with `X` is `X` itself.
pub fn identity(n: usize) -> Result<VoltageOperator> {
    let images = (0..n)
        .map(|i| CoxWord::generator(n, i))
        .collect::<Result<Vec<_>>>()?;
    d_operator(n, &images)
}

/// Medial: `m1 = 0`, `m2 = 1`.
pub fn medial() -> VoltageOperator {
    Table::new(3, 3, 2)
        .edge(2, 0, 1)
        .semi(0, 0, &[1])
        .semi(0, 1, &[0])
        .semi(1, 0, &[1])
        .semi(1, 1, &[2])
        .build()
        .expect("medial table")
}

/// Truncation: `a = 0`, `b = 1`, `c = 2`.
pub fn truncation() -> VoltageOperator {
    Table::new(3, 3, 3)
        .edge(1, 0, 1)
        .edge(2, 1, 2)
        .semi(0, 0, &[0])
        .semi(0, 2, &[2])
        .semi(1, 0, &[1])
        .semi(2, 0, &[1])
        .semi(2, 1, &[2])
        .build()
        .expect("truncation table")
}

/// Index of the prism flag `(σ, t)`; the base `(0, n)` is flag 0.
pub fn prism_flag(n: usize, sigma: usize, t: usize) -> usize {
    sigma * (n + 1) + (n - t)
}

/// The prism over an `n`-premaniplex, an `(n, n+1)`-operator on the flags
/// `(σ, t)` with `σ ∈ {0, 1}` and `0 <= t <= n`.
pub fn prism(n: usize) -> Result<VoltageOperator> {
    if n < 1 {
        return Err(Error::InvalidArgument("prism needs n >= 1".into()));
    }
    let f = |s, t| prism_flag(n, s, t);
    let mut table = Table::new(n, n + 1, 2 * (n + 1));
    table.edge(0, f(0, 0), f(1, 0));
    for s in 0..2 {
        for t in 1..=n {
            table.edge(t, f(s, t - 1), f(s, t));
        }
        for t in 0..=n {
            for i in 0..t {
                table.semi(f(s, t), i, &[i]);
            }
            for i in (t + 2)..=n {
                table.semi(f(s, t), i, &[i - 1]);
            }
        }
    }
    table.build()
}

/// The pyramid over an `n`-premaniplex on flags `z_0, …, z_{n+1}`.
pub fn pyramid(n: usize) -> Result<VoltageOperator> {
    if n < 1 {
        return Err(Error::InvalidArgument("pyramid needs n >= 1".into()));
    }
    let mut table = Table::new(n, n + 1, n + 2);
    for t in 0..=n {
        table.edge(n - t, t, t + 1);
    }
    for t in 0..=n + 1 {
        for i in 0..=n {
            if i + t < n {
                table.semi(t, i, &[i]);
            } else if i + t >= n + 2 {
                table.semi(t, i, &[i - 1]);
            }
        }
    }
    table.build()
}

/// `(1^n, images)`; each image must be an involution.
pub fn d_operator(n: usize, images: &[CoxWord]) -> Result<VoltageOperator> {
    if images.len() != n {
        return Err(Error::InvalidArgument(format!(
            "expected {n} images, found {}",
            images.len()
        )));
    }
    let volts = images.iter().map(|w| vec![w.clone()]).collect();
    VoltageOperator::new(n, Premaniplex::one_vertex(n)?, volts)
}

pub fn dual(n: usize) -> Result<VoltageOperator> {
    let images = (0..n)
        .map(|i| CoxWord::generator(n, n - 1 - i))
        .collect::<Result<Vec<_>>>()?;
    d_operator(n, &images)
}

pub fn petrie() -> VoltageOperator {
    let images = [vec![0, 2], vec![1], vec![2]].map(|l| CoxWord::new(3, &l).expect("rank 3"));
    d_operator(3, &images).expect("petrie images are involutions")
}

/// `2_∅` with every dart of color `i` carrying `r_i`.
pub fn double_cover(n: usize) -> Result<VoltageOperator> {
    if n < 1 {
        return Err(Error::InvalidArgument("double cover needs n >= 1".into()));
    }
    let mut table = Table::new(n, n, 2);
    for i in 0..n {
        table.edge(i, 0, 1).semi(0, i, &[i]).semi(1, i, &[i]);
    }
    table.build()
}

pub fn omnitruncation() -> VoltageOperator {
    compose(&medial(), &truncation()).expect("medial then truncation")
}

/// Truncation of the dual.
pub fn truncated_dual() -> VoltageOperator {
    compose(&dual(3).expect("rank 3"), &truncation()).expect("dual then truncation")
}

/// The medial of the medial.
pub fn rhombitruncation() -> VoltageOperator {
    compose(&medial(), &medial()).expect("medial twice")
}

/// Names accepted by [`builtin`]; `N` is a positive rank.
pub const BUILTIN_NAMES: &[&str] = &[
    "medial",
    "truncation",
    "truncated-dual",
    "rhombitruncation",
    "omnitruncation",
    "petrie",
    "dual",
    "dual:N",
    "double-cover",
    "double-cover:N",
    "prism:N",
    "pyramid:N",
    "identity:N",
];

/// Looks up a built-in by name, e.g. `medial`, `prism:3`, `dual:4`.
pub fn builtin(name: &str) -> Result<VoltageOperator> {
    let (head, arg) = match name.split_once(':') {
        Some((h, a)) => {
            let n = a
                .trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidArgument(format!("bad parameter in `{name}`")))?;
            (h, Some(n))
        }
        None => (name, None),
    };
    let fixed = |op: VoltageOperator| match arg {
        None | Some(3) => Ok(op),
        Some(_) => Err(Error::InvalidArgument(format!(
            "`{head}` only exists in rank 3"
        ))),
    };
    let needs = || {
        arg.ok_or_else(|| {
            Error::InvalidArgument(format!("`{head}` needs a parameter, e.g. `{head}:2`"))
        })
    };
    match head {
        "medial" => fixed(medial()),
        "truncation" => fixed(truncation()),
        "truncated-dual" => fixed(truncated_dual()),
        "rhombitruncation" => fixed(rhombitruncation()),
        "omnitruncation" => fixed(omnitruncation()),
        "petrie" => fixed(petrie()),
        "dual" => dual(arg.unwrap_or(3)),
        "double-cover" => double_cover(arg.unwrap_or(3)),
        "prism" => prism(needs()?),
        "pyramid" => pyramid(needs()?),
        "identity" => identity(needs()?),
        _ => Err(Error::InvalidArgument(format!("unknown operator `{name}`"))),
    }
}
