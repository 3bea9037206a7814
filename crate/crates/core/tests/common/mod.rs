//! Flag graphs built straight from incidence data, independent of the
//! voltage machinery. Faces are vertex sets; this is faithful for the
//! convex polyhedra and polygons used here.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use voltops::cosetenum::{coxeter_flag_graph, DEFAULT_CAP};
use voltops::symmetry::is_isomorphic;
use voltops::Premaniplex;

type Face = BTreeSet<usize>;

/// Faces of each rank `0..n`, each a set of vertex ids.
#[derive(Debug, Clone)]
pub struct Incidence {
    pub ranks: Vec<Vec<Face>>,
}

fn set(v: &[usize]) -> Face {
    v.iter().copied().collect()
}

impl Incidence {
    pub fn polyhedron(vertices: usize, edges: &[[usize; 2]], faces: &[Vec<usize>]) -> Self {
        Incidence {
            ranks: vec![
                (0..vertices).map(|v| set(&[v])).collect(),
                edges.iter().map(|e| set(e)).collect(),
                faces.iter().map(|f| set(f)).collect(),
            ],
        }
    }

    pub fn vertices(&self) -> &[Face] {
        &self.ranks[0]
    }

    pub fn edges(&self) -> &[Face] {
        &self.ranks[1]
    }

    pub fn faces(&self) -> &[Face] {
        &self.ranks[2]
    }

    /// Flags are maximal chains; `i`-adjacent flags differ only in rank
    /// `i`. Flags are numbered in lexicographic order of face indices.
    pub fn flag_graph(&self) -> Premaniplex {
        let n = self.ranks.len();
        let mut flags: Vec<Vec<usize>> = (0..self.ranks[0].len()).map(|v| vec![v]).collect();
        for r in 1..n {
            let mut next = Vec::new();
            for chain in &flags {
                let below = &self.ranks[r - 1][*chain.last().unwrap()];
                for (idx, face) in self.ranks[r].iter().enumerate() {
                    if below.is_subset(face) {
                        let mut c = chain.clone();
                        c.push(idx);
                        next.push(c);
                    }
                }
            }
            flags = next;
        }
        flags.sort();
        let index: HashMap<Vec<usize>, usize> = flags
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, f)| (f, i))
            .collect();
        let perms = (0..n)
            .map(|i| {
                flags
                    .iter()
                    .map(|flag| {
                        let candidates: Vec<usize> = (0..self.ranks[i].len())
                            .filter(|&c| c != flag[i])
                            .filter(|&c| {
                                i == 0
                                    || self.ranks[i - 1][flag[i - 1]].is_subset(&self.ranks[i][c])
                            })
                            .filter(|&c| {
                                i + 1 == n
                                    || self.ranks[i][c].is_subset(&self.ranks[i + 1][flag[i + 1]])
                            })
                            .collect();
                        assert_eq!(candidates.len(), 1, "diamond condition fails at rank {i}");
                        let mut other = flag.clone();
                        other[i] = candidates[0];
                        index[&other]
                    })
                    .collect()
            })
            .collect();
        Premaniplex::new(perms).expect("flag graph of a polytope")
    }

    fn edges_at(&self, v: usize) -> Vec<usize> {
        (0..self.edges().len())
            .filter(|&e| self.edges()[e].contains(&v))
            .collect()
    }

    fn face_edges(&self, f: usize) -> Vec<usize> {
        (0..self.edges().len())
            .filter(|&e| self.edges()[e].is_subset(&self.faces()[f]))
            .collect()
    }

    /// Vertices at edge midpoints; edges join consecutive edges around
    /// each face; faces are the old faces and the old vertex figures.
    pub fn medial(&self) -> Self {
        let mut edges = Vec::new();
        for f in 0..self.faces().len() {
            for &v in &self.faces()[f] {
                let at: Vec<usize> = self
                    .face_edges(f)
                    .into_iter()
                    .filter(|e| self.edges()[*e].contains(&v))
                    .collect();
                assert_eq!(at.len(), 2);
                edges.push(set(&at));
            }
        }
        let mut faces: Vec<Face> = (0..self.faces().len())
            .map(|f| set(&self.face_edges(f)))
            .collect();
        faces.extend((0..self.vertices().len()).map(|v| set(&self.edges_at(v))));
        Incidence {
            ranks: vec![
                (0..self.edges().len()).map(|e| set(&[e])).collect(),
                edges,
                faces,
            ],
        }
    }

    /// Vertices are arcs `(v, e)`; edges are the shortened old edges and
    /// one new edge per corner; faces are the old faces and one per vertex.
    pub fn truncation(&self) -> Self {
        let mut arcs: Vec<(usize, usize)> = Vec::new();
        for (e, face) in self.edges().iter().enumerate() {
            for &v in face {
                arcs.push((v, e));
            }
        }
        let arc = |v: usize, e: usize| arcs.iter().position(|&a| a == (v, e)).unwrap();
        let mut edges = Vec::new();
        for (e, face) in self.edges().iter().enumerate() {
            let ends: Vec<usize> = face.iter().map(|&v| arc(v, e)).collect();
            edges.push(set(&ends));
        }
        for f in 0..self.faces().len() {
            for &v in &self.faces()[f] {
                let at: Vec<usize> = self
                    .face_edges(f)
                    .into_iter()
                    .filter(|e| self.edges()[*e].contains(&v))
                    .map(|e| arc(v, e))
                    .collect();
                edges.push(set(&at));
            }
        }
        let mut faces: Vec<Face> = (0..self.faces().len())
            .map(|f| {
                self.face_edges(f)
                    .into_iter()
                    .flat_map(|e| {
                        self.edges()[e]
                            .iter()
                            .map(move |&v| (v, e))
                            .collect::<Vec<_>>()
                    })
                    .map(|(v, e)| arc(v, e))
                    .collect()
            })
            .collect();
        faces.extend(
            (0..self.vertices().len())
                .map(|v| self.edges_at(v).into_iter().map(|e| arc(v, e)).collect()),
        );
        Incidence {
            ranks: vec![(0..arcs.len()).map(|a| set(&[a])).collect(), edges, faces],
        }
    }

    /// Incidence reversal.
    pub fn dual(&self) -> Self {
        let containing = |s: &Face| -> Face {
            (0..self.faces().len())
                .filter(|&f| s.is_subset(&self.faces()[f]))
                .collect()
        };
        Incidence {
            ranks: vec![
                (0..self.faces().len()).map(|f| set(&[f])).collect(),
                self.edges().iter().map(containing).collect(),
                self.vertices().iter().map(containing).collect(),
            ],
        }
    }
}

pub fn tetrahedron() -> Incidence {
    let edges: Vec<[usize; 2]> = (0..4)
        .flat_map(|a| ((a + 1)..4).map(move |b| [a, b]))
        .collect();
    let faces: Vec<Vec<usize>> = (0..4)
        .map(|skip| (0..4).filter(|&v| v != skip).collect())
        .collect();
    Incidence::polyhedron(4, &edges, &faces)
}

pub fn cube() -> Incidence {
    let mut edges = Vec::new();
    for v in 0..8usize {
        for bit in [1, 2, 4] {
            if v & bit == 0 {
                edges.push([v, v | bit]);
            }
        }
    }
    let mut faces = Vec::new();
    for bit in [1, 2, 4] {
        for value in [0, bit] {
            faces.push((0..8).filter(|v| v & bit == value).collect());
        }
    }
    Incidence::polyhedron(8, &edges, &faces)
}

pub fn polygon(p: usize) -> Incidence {
    Incidence {
        ranks: vec![
            (0..p).map(|v| set(&[v])).collect(),
            (0..p).map(|v| set(&[v, (v + 1) % p])).collect(),
        ],
    }
}

/// Prism over the `p`-gon: vertex `(i, s)` is `2i + s`.
pub fn polygon_prism(p: usize) -> Incidence {
    let v = |i: usize, s: usize| 2 * (i % p) + s;
    let mut edges = Vec::new();
    for i in 0..p {
        edges.push([v(i, 0), v(i + 1, 0)]);
        edges.push([v(i, 1), v(i + 1, 1)]);
        edges.push([v(i, 0), v(i, 1)]);
    }
    let mut faces: Vec<Vec<usize>> = (0..2).map(|s| (0..p).map(|i| v(i, s)).collect()).collect();
    for i in 0..p {
        faces.push(vec![v(i, 0), v(i + 1, 0), v(i, 1), v(i + 1, 1)]);
    }
    Incidence::polyhedron(2 * p, &edges, &faces)
}

/// Pyramid over the `p`-gon with apex `p`.
pub fn polygon_pyramid(p: usize) -> Incidence {
    let mut edges = Vec::new();
    for i in 0..p {
        edges.push([i, (i + 1) % p]);
        edges.push([i, p]);
    }
    let mut faces: Vec<Vec<usize>> = vec![(0..p).collect()];
    for i in 0..p {
        faces.push(vec![i, (i + 1) % p, p]);
    }
    Incidence::polyhedron(p + 1, &edges, &faces)
}

pub fn cox(schlafli: &[usize]) -> Premaniplex {
    coxeter_flag_graph(schlafli, &[], DEFAULT_CAP).expect("finite Coxeter group")
}

pub fn hemicube() -> Premaniplex {
    coxeter_flag_graph(&[4, 3], &[vec![0, 1, 2, 0, 1, 2, 0, 1, 2]], DEFAULT_CAP).expect("hemicube")
}

pub fn iso(a: &Premaniplex, b: &Premaniplex) -> bool {
    is_isomorphic(a, b)
        .expect("comparable premaniplexes")
        .is_some()
}

/// Named connected rank-3 premaniplexes.
pub fn maniplexes() -> Vec<(String, Premaniplex)> {
    let mut out = vec![
        ("tetrahedron".to_string(), cox(&[3, 3])),
        ("cube".to_string(), cox(&[4, 3])),
        ("octahedron".to_string(), cox(&[3, 4])),
        ("{2,4}".to_string(), cox(&[2, 4])),
        ("hemicube".to_string(), hemicube()),
    ];
    for p in 3..=6 {
        out.push((format!("pyramid({p})"), polygon_pyramid(p).flag_graph()));
    }
    out.push(("prism(5)".to_string(), polygon_prism(5).flag_graph()));
    out
}

/// `(X, operator name)` pairs with connected products.
pub fn corpus_pairs() -> Vec<(String, Premaniplex, String)> {
    let mut out = Vec::new();
    for (name, x) in maniplexes() {
        for op in ["medial", "truncation", "dual", "petrie"] {
            out.push((name.clone(), x.clone(), op.to_string()));
        }
    }
    for p in 3..=6 {
        let x = Premaniplex::polygon(p).unwrap();
        for op in ["prism:2", "pyramid:2", "dual:2"] {
            out.push((format!("polygon({p})"), x.clone(), op.to_string()));
        }
    }
    out.push((
        "cube".to_string(),
        cox(&[4, 3]),
        "omnitruncation".to_string(),
    ));
    out.push((
        "tetrahedron".to_string(),
        cox(&[3, 3]),
        "rhombitruncation".to_string(),
    ));
    out
}
