//! Automorphisms, isomorphisms and coverings of connected premaniplexes.
//!
//! A color-preserving map out of a connected premaniplex is determined by the
//! image of one flag, so every search here is "pick a target for flag 0 and
//! propagate along the colors".

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::premaniplex::Premaniplex;

/// A permutation of flags, acting on the right: `x ↦ images[x]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FlagPermutation {
    images: Vec<usize>,
}

impl FlagPermutation {
    pub fn identity(flag_count: usize) -> Self {
        FlagPermutation {
            images: (0..flag_count).collect(),
        }
    }

    /// Wraps `images`, checking that it is a bijection.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &y in &images {
            if y >= images.len() || std::mem::replace(&mut seen[y], true) {
                return Err(Error::InvalidArgument(
                    "images do not form a bijection".into(),
                ));
            }
        }
        Ok(FlagPermutation { images })
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    #[inline]
    pub fn image(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `self` then `other`: `x ↦ (x self) other`.
    pub fn then(&self, other: &FlagPermutation) -> FlagPermutation {
        FlagPermutation {
            images: self.images.iter().map(|&y| other.images[y]).collect(),
        }
    }

    pub fn inverse(&self) -> FlagPermutation {
        let mut inv = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        FlagPermutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// `x^i γ = (xγ)^i` for every flag and color.
    pub fn is_automorphism_of(&self, p: &Premaniplex) -> bool {
        self.images.len() == p.flag_count()
            && p.perms()
                .iter()
                .all(|perm| (0..perm.len()).all(|x| self.images[perm[x]] == perm[self.images[x]]))
    }
}

/// Where propagation of a flag assignment broke down.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conflict {
    /// Flag of the source whose image was already assigned differently.
    pub flag: usize,
    /// Color along which the conflicting assignment arrived.
    pub color: usize,
}

fn check_ranks(p: &Premaniplex, q: &Premaniplex) -> Result<()> {
    if p.rank() != q.rank() {
        return Err(Error::RankMismatch {
            expected: p.rank(),
            found: q.rank(),
        });
    }
    Ok(())
}

/// Propagation without the connectivity check; `None` on conflict. Flags
/// outside the component of `x0` are left as `usize::MAX`.
pub(crate) fn propagate(
    p: &Premaniplex,
    q: &Premaniplex,
    x0: usize,
    q0: usize,
) -> std::result::Result<Vec<usize>, Conflict> {
    let mut map = vec![usize::MAX; p.flag_count()];
    map[x0] = q0;
    let mut queue = VecDeque::from([x0]);
    while let Some(x) = queue.pop_front() {
        let fx = map[x];
        for (color, (pp, qp)) in p.perms().iter().zip(q.perms()).enumerate() {
            let y = pp[x];
            let target = qp[fx];
            if map[y] == usize::MAX {
                map[y] = target;
                queue.push_back(y);
            } else if map[y] != target {
                return Err(Conflict { flag: y, color });
            }
        }
    }
    Ok(map)
}

fn is_bijective(map: &[usize]) -> bool {
    let mut seen = vec![false; map.len()];
    map.iter()
        .all(|&y| y < seen.len() && !std::mem::replace(&mut seen[y], true))
}

/// The unique color-preserving extension of `x0 ↦ q0`, or the first
/// conflict met by BFS propagation.
pub fn extend_morphism(
    p: &Premaniplex,
    q: &Premaniplex,
    x0: usize,
    q0: usize,
) -> Result<std::result::Result<Vec<usize>, Conflict>> {
    check_ranks(p, q)?;
    p.require_connected()?;
    for (flag, count) in [(x0, p.flag_count()), (q0, q.flag_count())] {
        if flag >= count {
            return Err(Error::FlagOutOfRange {
                flag,
                flag_count: count,
            });
        }
    }
    Ok(propagate(p, q, x0, q0))
}

/// An explicit automorphism group with its flag-orbit partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomorphismGroup {
    pub elements: Vec<FlagPermutation>,
    /// Orbits, each sorted, ordered by least flag.
    pub orbits: Vec<Vec<usize>>,
}

impl AutomorphismGroup {
    /// Wraps a list of elements already known to form a group.
    pub fn from_elements(elements: Vec<FlagPermutation>, flag_count: usize) -> Self {
        let orbits = orbit_partition(&elements, flag_count);
        AutomorphismGroup { elements, orbits }
    }

    /// The closure of `generators` under composition, identity first then
    /// breadth-first order of discovery.
    pub fn generated_by(generators: &[FlagPermutation], flag_count: usize) -> Self {
        let id = FlagPermutation::identity(flag_count);
        let mut seen: HashSet<FlagPermutation> = HashSet::from([id.clone()]);
        let mut elements = vec![id];
        let mut head = 0;
        while head < elements.len() {
            let e = elements[head].clone();
            head += 1;
            for g in generators {
                let h = e.then(g);
                if seen.insert(h.clone()) {
                    elements.push(h);
                }
            }
        }
        Self::from_elements(elements, flag_count)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(Vec::len).collect()
    }
}

fn orbit_partition(elements: &[FlagPermutation], flag_count: usize) -> Vec<Vec<usize>> {
    let mut assigned = vec![false; flag_count];
    let mut orbits = Vec::new();
    for x in 0..flag_count {
        if assigned[x] {
            continue;
        }
        let mut orbit: Vec<usize> = elements.iter().map(|g| g.image(x)).collect();
        orbit.push(x);
        orbit.sort_unstable();
        orbit.dedup();
        // close under the elements in case only generators were supplied
        let mut queue: VecDeque<usize> = orbit.iter().copied().collect();
        let mut members: HashSet<usize> = orbit.iter().copied().collect();
        while let Some(y) = queue.pop_front() {
            for g in elements {
                let z = g.image(y);
                if members.insert(z) {
                    queue.push_back(z);
                }
            }
        }
        let mut orbit: Vec<usize> = members.into_iter().collect();
        orbit.sort_unstable();
        for &y in &orbit {
            assigned[y] = true;
        }
        orbits.push(orbit);
    }
    orbits
}

/// Per-flag invariant: the lengths of the alternating `i, j` cycles
/// through the flag, for every pair of colors.
fn signatures(p: &Premaniplex) -> Vec<Vec<usize>> {
    let n = p.rank();
    (0..p.flag_count())
        .map(|x| {
            let mut sig = Vec::with_capacity(n * n.saturating_sub(1) / 2);
            for i in 0..n {
                for j in (i + 1)..n {
                    let (mut y, mut len) = (x, 0);
                    loop {
                        y = p.adj(p.adj(y, i), j);
                        len += 1;
                        if y == x {
                            break;
                        }
                    }
                    sig.push(len);
                }
            }
            sig
        })
        .collect()
}

/// All automorphisms of a connected premaniplex, in order of the image of
/// flag 0.
pub fn automorphisms(p: &Premaniplex) -> Result<AutomorphismGroup> {
    p.require_connected()?;
    let sig = signatures(p);
    let elements: Vec<FlagPermutation> = (0..p.flag_count())
        .filter(|&x| sig[x] == sig[0])
        .filter_map(|x| match propagate(p, p, 0, x) {
            Ok(map) if is_bijective(&map) => Some(FlagPermutation { images: map }),
            _ => None,
        })
        .collect();
    Ok(AutomorphismGroup::from_elements(elements, p.flag_count()))
}

/// An isomorphism `p → q` (first one by target of flag 0), if any.
pub fn is_isomorphic(p: &Premaniplex, q: &Premaniplex) -> Result<Option<Vec<usize>>> {
    check_ranks(p, q)?;
    p.require_connected()?;
    q.require_connected()?;
    if p.flag_count() != q.flag_count() {
        return Ok(None);
    }
    let (sp, sq) = (signatures(p), signatures(q));
    Ok((0..q.flag_count())
        .filter(|&q0| sq[q0] == sp[0])
        .find_map(|q0| match propagate(p, q, 0, q0) {
            Ok(map) if is_bijective(&map) => Some(map),
            _ => None,
        }))
}

/// A covering `p → q` given by the image of flag 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverWitness {
    pub target_of_base: usize,
    pub map: Vec<usize>,
}

/// Whether `p` covers `q`, with the first witness by target flag.
pub fn covers(p: &Premaniplex, q: &Premaniplex) -> Result<Option<CoverWitness>> {
    check_ranks(p, q)?;
    p.require_connected()?;
    q.require_connected()?;
    Ok((0..q.flag_count()).find_map(|q0| {
        propagate(p, q, 0, q0).ok().map(|map| CoverWitness {
            target_of_base: q0,
            map,
        })
    }))
}

/// Flag orbits of the group generated by `elements`.
pub fn orbits(p: &Premaniplex, elements: &[FlagPermutation]) -> Result<Vec<Vec<usize>>> {
    if let Some(idx) = elements.iter().position(|g| !g.is_automorphism_of(p)) {
        return Err(Error::NotAutomorphism(format!("element {idx}")));
    }
    Ok(orbit_partition(elements, p.flag_count()))
}

/// The symmetry type graph `P / Aut(P)`.
pub fn stg(p: &Premaniplex) -> Result<Premaniplex> {
    let group = automorphisms(p)?;
    Ok(p.quotient(&group.elements)?.premaniplex)
}
