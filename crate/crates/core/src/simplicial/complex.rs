use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{GerbeError, Result};
use crate::exactalg::{IntMatrix, Integer, IntegerSystem};

/// An oriented simplex: strictly ascending vertex labels.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    /// Sorts `vertices`; fails on duplicates or an empty list.
    pub fn new(mut vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(GerbeError::MalformedInput("empty simplex".into()));
        }
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(GerbeError::MalformedInput(format!(
                "duplicate vertex in simplex {vertices:?}"
            )));
        }
        Ok(Simplex(vertices))
    }

    pub(crate) fn from_sorted(vertices: Vec<usize>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Simplex(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// The face opposite the `j`-th vertex. `None` for a vertex.
    pub fn face(&self, j: usize) -> Option<Simplex> {
        if self.0.len() <= 1 {
            return None;
        }
        let mut v = self.0.clone();
        v.remove(j);
        Some(Simplex(v))
    }

    pub fn contains(&self, other: &Simplex) -> bool {
        other.0.iter().all(|v| self.0.binary_search(v).is_ok())
    }

    pub fn union(&self, other: &Simplex) -> Simplex {
        let set: BTreeSet<usize> = self.0.iter().chain(&other.0).copied().collect();
        Simplex(set.into_iter().collect())
    }

    /// All nonempty subsets, i.e. the faces including `self`.
    pub fn all_faces(&self) -> Vec<Simplex> {
        let n = self.0.len();
        (1u64..(1 << n))
            .map(|mask| {
                Simplex(
                    (0..n)
                        .filter(|i| mask & (1 << i) != 0)
                        .map(|i| self.0[i])
                        .collect(),
                )
            })
            .collect()
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// A finite abstract simplicial complex with the ascending-vertex orientation.
pub struct SimplicialComplex {
    simplices: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
    // faces[k][i][j] = index of the j-th face of the i-th k-simplex (k ≥ 1)
    faces: Vec<Vec<Vec<usize>>>,
    maximal: Vec<Simplex>,
    systems_from: Vec<OnceLock<Arc<IntegerSystem>>>,
    systems_into: Vec<OnceLock<Arc<IntegerSystem>>>,
    boundary_systems: Vec<OnceLock<Arc<IntegerSystem>>>,
}

pub type Complex = Arc<SimplicialComplex>;

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other) || self.simplices == other.simplices
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplicialComplex(f-vector {:?})", self.f_vector())
    }
}

/// Downward closure of the given maximal simplices.
pub fn build_complex(maximal_simplices: &[Vec<usize>]) -> Result<Complex> {
    if maximal_simplices.is_empty() {
        return Err(GerbeError::MalformedInput("complex has no simplices".into()));
    }
    let simplices = maximal_simplices
        .iter()
        .map(|s| Simplex::new(s.clone()))
        .collect::<Result<Vec<_>>>()?;
    Ok(Arc::new(SimplicialComplex::from_generators(simplices)))
}

impl SimplicialComplex {
    /// Closure of an arbitrary (nonempty) family of simplices.
    pub(crate) fn from_generators(generators: Vec<Simplex>) -> Self {
        assert!(!generators.is_empty(), "empty complex");
        let mut all: BTreeSet<Simplex> = BTreeSet::new();
        for s in &generators {
            if all.contains(s) {
                continue;
            }
            all.extend(s.all_faces());
        }
        let dim = all.iter().map(Simplex::dim).max().unwrap_or(0);
        let mut simplices: Vec<Vec<Simplex>> = vec![Vec::new(); dim + 1];
        for s in all {
            simplices[s.dim()].push(s);
        }
        // BTreeSet order is lexicographic, so each bucket is already sorted.
        let index: Vec<HashMap<Simplex, usize>> = simplices
            .iter()
            .map(|bucket| bucket.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect())
            .collect();
        let mut faces = vec![Vec::new()];
        for k in 1..=dim {
            faces.push(
                simplices[k]
                    .iter()
                    .map(|s| {
                        (0..=k)
                            .map(|j| index[k - 1][&s.face(j).expect("k ≥ 1")])
                            .collect()
                    })
                    .collect(),
            );
        }
        let maximal = Self::compute_maximal(&simplices);
        SimplicialComplex {
            systems_from: (0..dim + 2).map(|_| OnceLock::new()).collect(),
            systems_into: (0..dim + 2).map(|_| OnceLock::new()).collect(),
            boundary_systems: (0..dim + 2).map(|_| OnceLock::new()).collect(),
            simplices,
            index,
            faces,
            maximal,
        }
    }

    fn compute_maximal(simplices: &[Vec<Simplex>]) -> Vec<Simplex> {
        let mut face_of_something: BTreeSet<Simplex> = BTreeSet::new();
        for k in 1..simplices.len() {
            for s in &simplices[k] {
                for j in 0..=k {
                    face_of_something.insert(s.face(j).expect("k ≥ 1"));
                }
            }
        }
        simplices
            .iter()
            .flatten()
            .filter(|s| !face_of_something.contains(*s))
            .cloned()
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.simplices.len() - 1
    }

    /// Number of `k`-simplices (zero above the dimension).
    pub fn count(&self, k: usize) -> usize {
        self.simplices.get(k).map_or(0, Vec::len)
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(k, s)| if k % 2 == 0 { s.len() as i64 } else { -(s.len() as i64) })
            .sum()
    }

    pub fn simplices(&self, k: usize) -> &[Simplex] {
        self.simplices.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.simplices[0].iter().map(|s| s.0[0]).collect()
    }

    pub fn maximal_simplices(&self) -> &[Simplex] {
        &self.maximal
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s.dim())?.get(s).copied()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index_of(s).is_some()
    }

    /// Indices of the faces of the `i`-th `k`-simplex, in alternating-sum
    /// order (`j`-th entry omits the `j`-th vertex).
    pub fn face_indices(&self, k: usize, i: usize) -> &[usize] {
        &self.faces[k][i]
    }

    /// Matrix of δ_k : Cᵏ → Cᵏ⁺¹ (rows are (k+1)-simplices).
    pub fn coboundary_matrix(&self, k: usize) -> IntMatrix {
        let rows = self.count(k + 1);
        let cols = self.count(k);
        let mut m = IntMatrix::zeros(rows, cols);
        for i in 0..rows {
            for (j, &f) in self.faces[k + 1][i].iter().enumerate() {
                m.set(i, f, if j % 2 == 0 { Integer::from(1) } else { Integer::from(-1) });
            }
        }
        m
    }

    /// Factorised δ_k (maps k-cochains to (k+1)-cochains).
    pub fn coboundary_from(&self, k: usize) -> Arc<IntegerSystem> {
        self.cached(&self.systems_from, k, || self.coboundary_matrix(k))
    }

    /// Factorised δ_{k−1} (the map whose image is the k-coboundaries).
    pub fn coboundary_into(&self, k: usize) -> Arc<IntegerSystem> {
        self.cached(&self.systems_into, k, || {
            if k == 0 {
                IntMatrix::zeros(self.count(0), 0)
            } else {
                self.coboundary_matrix(k - 1)
            }
        })
    }

    /// Factorised chain boundary ∂_k : C_k → C_{k−1}.
    pub fn boundary(&self, k: usize) -> Arc<IntegerSystem> {
        self.cached(&self.boundary_systems, k, || {
            if k == 0 {
                IntMatrix::zeros(0, self.count(0))
            } else {
                self.coboundary_matrix(k - 1).transpose()
            }
        })
    }

    fn cached(
        &self,
        slots: &[OnceLock<Arc<IntegerSystem>>],
        k: usize,
        build: impl FnOnce() -> IntMatrix,
    ) -> Arc<IntegerSystem> {
        match slots.get(k) {
            Some(slot) => slot.get_or_init(|| Arc::new(IntegerSystem::new(build()))).clone(),
            None => Arc::new(IntegerSystem::new(build())),
        }
    }

    /// Simplices containing `core` (the open star as a set of simplices).
    pub fn cofaces(&self, core: &Simplex) -> Vec<Simplex> {
        self.simplices
            .iter()
            .skip(core.dim())
            .flatten()
            .filter(|s| s.contains(core))
            .cloned()
            .collect()
    }

    /// Whether `other` is a subcomplex of `self` (same vertex labels).
    pub fn contains_complex(&self, other: &SimplicialComplex) -> bool {
        other.simplices.iter().flatten().all(|s| self.contains(s))
    }
}
