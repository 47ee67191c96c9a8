//! Instance generators: affine arrangements over the rationals, graphs and
//! their bipartite-subgraph complexes, matroids, and seeded random semimatroids.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{Complex, Face, GroundSet};
use crate::error::{Error, Result};
use crate::semimatroid::{semimatroid_from_spi, Matroid, Semimatroid};

/// Largest arrangement or edge set whose subsets are enumerated.
pub const MAX_ELEMENTS: usize = 16;

/// Affine hyperplanes `normal · v = offset` in `Q^dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    pub dim: usize,
    pub hyperplanes: Vec<(Vec<BigRational>, BigRational)>,
}

impl Arrangement {
    pub fn new(dim: usize, hyperplanes: Vec<(Vec<BigRational>, BigRational)>) -> Result<Self> {
        for (k, (normal, _)) in hyperplanes.iter().enumerate() {
            if normal.len() != dim {
                return Err(Error::Argument(format!(
                    "hyperplane {} has {} coordinates, expected {dim}",
                    k + 1,
                    normal.len()
                )));
            }
            if normal.iter().all(Zero::is_zero) {
                return Err(Error::Argument(format!("hyperplane {} has a zero normal", k + 1)));
            }
        }
        Ok(Self { dim, hyperplanes })
    }

    /// Integer coefficients, for tests and examples.
    pub fn from_integers(dim: usize, hyperplanes: &[(&[i64], i64)]) -> Result<Self> {
        let q = |v: i64| BigRational::from_integer(BigInt::from(v));
        Self::new(dim, hyperplanes.iter().map(|(n, b)| (n.iter().map(|&v| q(v)).collect(), q(*b))).collect())
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }
}

/// Row rank over the rationals, by Gaussian elimination.
pub fn rational_rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for i in rank + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let factor = &m[i][c] / &pivot;
            for j in c..cols {
                let sub = &factor * &m[rank][j];
                m[i][j] -= sub;
            }
        }
        rank += 1;
    }
    rank
}

/// Intersecting subsets with `r(σ) = n − dim(∩σ)`, labelled `1..k`.
pub fn semimatroid_from_arrangement(a: &Arrangement) -> Result<Semimatroid> {
    if a.is_empty() {
        return Err(Error::Argument("empty arrangement".into()));
    }
    if a.len() > MAX_ELEMENTS {
        return Err(Error::Range(format!("at most {MAX_ELEMENTS} hyperplanes are supported")));
    }
    let ground = Arc::new(GroundSet::numbered(a.len()));
    let mut faces = Vec::new();
    let mut ranks = Vec::new();
    for sigma in Face::full(a.len()).subsets() {
        let normals: Vec<Vec<BigRational>> = sigma.iter().map(|i| a.hyperplanes[i].0.clone()).collect();
        let augmented: Vec<Vec<BigRational>> = sigma
            .iter()
            .map(|i| {
                let (n, b) = &a.hyperplanes[i];
                n.iter().cloned().chain(std::iter::once(b.clone())).collect()
            })
            .collect();
        let r = rational_rank(&normals);
        if r == rational_rank(&augmented) {
            faces.push(sigma);
            ranks.push((sigma, r));
        }
    }
    let complex = Complex::from_faces(ground.clone(), ground.full(), faces)?;
    Semimatroid::new(complex, ranks.into_iter().collect())
}

/// Simple graph on vertices `0..vertices`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &(u, v) in &edges {
            if u >= vertices || v >= vertices {
                return Err(Error::Range(format!("edge ({u}, {v}) leaves the {vertices} vertices")));
            }
            if u == v {
                return Err(Error::Argument(format!("self-loop at {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::Argument(format!("repeated edge ({u}, {v})")));
            }
        }
        Ok(Self { vertices, edges })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Self { vertices: n, edges }
    }

    pub fn cycle(n: usize) -> Self {
        Self { vertices: n, edges: (0..n).map(|u| (u, (u + 1) % n)).collect() }
    }

    /// Edge labels `u-v`.
    pub fn ground(&self) -> Arc<GroundSet> {
        let labels = self.edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
        Arc::new(GroundSet::new(labels).expect("edges are distinct"))
    }

    fn components(&self, edges: Face) -> usize {
        let mut parent: Vec<usize> = (0..self.vertices).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        let mut count = self.vertices;
        for e in edges.iter() {
            let (u, v) = self.edges[e];
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a] = b;
                count -= 1;
            }
        }
        count
    }

    /// Size of a spanning forest of the chosen edges.
    pub fn graphic_rank(&self, edges: Face) -> usize {
        self.vertices - self.components(edges)
    }

    /// Whether the chosen edges form a 2-colourable subgraph.
    pub fn is_bipartite(&self, edges: Face) -> bool {
        let mut colour: Vec<Option<bool>> = vec![None; self.vertices];
        let adjacent = |x: usize| {
            edges.iter().filter_map(move |e| {
                let (u, v) = self.edges[e];
                if u == x {
                    Some(v)
                } else if v == x {
                    Some(u)
                } else {
                    None
                }
            })
        };
        for start in 0..self.vertices {
            if colour[start].is_some() {
                continue;
            }
            colour[start] = Some(false);
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                let c = colour[x].expect("coloured on push");
                for y in adjacent(x) {
                    match colour[y] {
                        None => {
                            colour[y] = Some(!c);
                            stack.push(y);
                        }
                        Some(d) if d == c => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatroidKind {
    Uniform {
        n: usize,
        r: usize,
    },
    Graphic(Graph),
    /// One row vector per element.
    Linear(Vec<Vec<BigRational>>),
}

pub fn matroid_make(kind: &MatroidKind) -> Result<Matroid> {
    match kind {
        MatroidKind::Uniform { n, r } => Matroid::uniform(*n, *r),
        MatroidKind::Graphic(g) => {
            if g.edges.len() > MAX_ELEMENTS {
                return Err(Error::Range(format!("at most {MAX_ELEMENTS} edges are supported")));
            }
            Matroid::from_fn(g.ground(), Face::full(g.edges.len()), |s| g.graphic_rank(s))
        }
        MatroidKind::Linear(rows) => {
            if rows.len() > MAX_ELEMENTS {
                return Err(Error::Range(format!("at most {MAX_ELEMENTS} vectors are supported")));
            }
            let width = rows.first().map_or(0, Vec::len);
            if rows.iter().any(|r| r.len() != width) {
                return Err(Error::Argument("vectors of different lengths".into()));
            }
            let ground = Arc::new(GroundSet::numbered(rows.len()));
            Matroid::from_fn(ground, Face::full(rows.len()), |s| {
                let chosen: Vec<Vec<BigRational>> = s.iter().map(|i| rows[i].clone()).collect();
                rational_rank(&chosen)
            })
        }
    }
}

/// Largest graph accepted by [`bipartite_complex`].
pub const MAX_BIPARTITE_EDGES: usize = 12;

/// Edge sets spanning bipartite subgraphs, with the graphic rank restricted to them.
pub fn bipartite_complex(g: &Graph) -> Result<(Complex, Semimatroid)> {
    if g.edges.len() > MAX_BIPARTITE_EDGES {
        return Err(Error::Range(format!("at most {MAX_BIPARTITE_EDGES} edges are supported")));
    }
    let m = matroid_make(&MatroidKind::Graphic(g.clone()))?;
    let faces = Face::full(g.edges.len()).subsets().filter(|&s| g.is_bipartite(s));
    let complex = Complex::from_faces(g.ground(), m.elements(), faces)?;
    let s = semimatroid_from_spi(&m, &complex)?;
    Ok((complex, s))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RandomKind {
    /// Small-integer affine arrangement in dimension 2 or 3.
    Arrangement,
    /// Bipartite-subgraph complex of a random graph.
    Graphic,
    /// Random vectors (zero vectors allowed) with a greedily grown pseudo-independence complex.
    Linear,
}

impl std::str::FromStr for RandomKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "arrangement" => Ok(RandomKind::Arrangement),
            "graphic" => Ok(RandomKind::Graphic),
            "linear" => Ok(RandomKind::Linear),
            _ => Err(Error::Argument(format!("unknown kind {s:?} (arrangement, graphic, linear)"))),
        }
    }
}

pub const MAX_RANDOM_ELEMENTS: usize = 9;
const ATTEMPTS: usize = 200;

/// A semimatroid on `n` elements, deterministic in `(seed, kind, n)` and always
/// passing the axiom check.
pub fn random_semimatroid(seed: u64, kind: RandomKind, n: usize) -> Result<Semimatroid> {
    if n == 0 || n > MAX_RANDOM_ELEMENTS {
        return Err(Error::Argument(format!("element count must be in 1..={MAX_RANDOM_ELEMENTS}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ATTEMPTS {
        let candidate = match kind {
            RandomKind::Arrangement => random_arrangement(&mut rng, n).and_then(|a| semimatroid_from_arrangement(&a)),
            RandomKind::Graphic => random_graph(&mut rng, n).and_then(|g| bipartite_complex(&g).map(|p| p.1)),
            RandomKind::Linear => random_linear(&mut rng, n),
        };
        if let Ok(s) = candidate {
            if s.is_valid() {
                return Ok(s);
            }
        }
    }
    Err(Error::Generation(format!("no valid {kind:?} instance after {ATTEMPTS} attempts")))
}

/// Cycles through the three kinds, so seeds `0, 1, 2, ...` mix them.
pub fn random_semimatroid_mixed(seed: u64, n: usize) -> Result<Semimatroid> {
    let kind = [RandomKind::Arrangement, RandomKind::Graphic, RandomKind::Linear][(seed % 3) as usize];
    random_semimatroid(seed, kind, n)
}

fn small_rational<R: Rng>(rng: &mut R, bound: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(rng.gen_range(-bound..=bound)))
}

pub fn random_arrangement<R: Rng>(rng: &mut R, n: usize) -> Result<Arrangement> {
    let dim = rng.gen_range(2..=3);
    let mut hyperplanes = Vec::with_capacity(n);
    while hyperplanes.len() < n {
        let normal: Vec<BigRational> = (0..dim).map(|_| small_rational(rng, 2)).collect();
        if normal.iter().all(Zero::is_zero) {
            continue;
        }
        hyperplanes.push((normal, small_rational(rng, 2)));
    }
    Arrangement::new(dim, hyperplanes)
}

pub fn random_graph<R: Rng>(rng: &mut R, edges: usize) -> Result<Graph> {
    let min_vertices = (2..).find(|v| v * (v - 1) / 2 >= edges).expect("some complete graph is large enough");
    let vertices = rng.gen_range(min_vertices..=min_vertices.max(6));
    let mut all = Graph::complete(vertices).edges;
    all.shuffle(rng);
    all.truncate(edges);
    all.sort_unstable();
    Graph::new(vertices, all)
}

fn random_linear<R: Rng>(rng: &mut R, n: usize) -> Result<Semimatroid> {
    let dim = rng.gen_range(1..=3);
    let rows: Vec<Vec<BigRational>> = (0..n).map(|_| (0..dim).map(|_| small_rational(rng, 1)).collect()).collect();
    let m = matroid_make(&MatroidKind::Linear(rows))?;
    let complex = grow_spi_complex(rng, &m);
    semimatroid_from_spi(&m, &complex)
}

/// Independent sets plus a few random dependent sets, closed under taking
/// subsets, pseudo-independence and the cone-point condition.
pub fn grow_spi_complex<R: Rng>(rng: &mut R, m: &Matroid) -> Complex {
    let universe = m.elements();
    let mut faces: BTreeSet<Face> = universe.subsets().filter(|&s| m.rank_of(s) == s.len()).collect();
    let dependent: Vec<Face> = universe.subsets().filter(|&s| m.rank_of(s) < s.len()).collect();
    if !dependent.is_empty() {
        for _ in 0..rng.gen_range(0..=2) {
            faces.insert(dependent[rng.gen_range(0..dependent.len())]);
        }
    }
    loop {
        let mut next = faces.clone();
        for &f in &faces {
            next.extend(f.subsets());
        }
        for &sigma in &faces {
            let rs = m.rank_of(sigma);
            for x in universe.difference(sigma).iter() {
                let up = sigma.with(x);
                let ru = m.rank_of(up);
                if ru > rs {
                    next.insert(up);
                } else if faces.contains(&up) {
                    let cone: Vec<Face> = faces.iter().filter(|f| sigma.is_subset(**f)).map(|f| f.with(x)).collect();
                    next.extend(cone);
                }
            }
        }
        if next == faces {
            break;
        }
        faces = next;
    }
    Complex::from_faces(m.ground().clone(), universe, faces).expect("closed under subsets")
}

/// `p/q` in lowest terms.
pub fn rational(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}
