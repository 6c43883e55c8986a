use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use super::cochain::Cochain;
use super::complex::{Complex, Simplex, SimplicialComplex};
use crate::error::{GerbeError, Result};
use crate::exactalg::Rational;

/// A vertex map that sends simplices to (possibly degenerate) simplices.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    source: Complex,
    target: Complex,
    vertex_map: BTreeMap<usize, usize>,
}

impl SimplicialMap {
    /// Validates totality on the source vertices and the simplicial condition.
    pub fn new(source: &Complex, target: &Complex, vertex_map: BTreeMap<usize, usize>) -> Result<Self> {
        for v in source.vertices() {
            let Some(&w) = vertex_map.get(&v) else {
                return Err(GerbeError::MalformedMap(format!("vertex {v} has no image")));
            };
            if !target.contains(&Simplex::from_sorted(vec![w])) {
                return Err(GerbeError::MalformedMap(format!("image {w} of vertex {v} is not a target vertex")));
            }
        }
        if let Some(extra) = vertex_map.keys().find(|v| !source.contains(&Simplex::from_sorted(vec![**v]))) {
            return Err(GerbeError::MalformedMap(format!("vertex {extra} is not in the source")));
        }
        let map = SimplicialMap {
            source: source.clone(),
            target: target.clone(),
            vertex_map,
        };
        for s in source.maximal_simplices() {
            let image = map.image(s);
            if !target.contains(&image) {
                return Err(GerbeError::MalformedMap(format!("{s} maps to {image}, which is not a simplex")));
            }
        }
        Ok(map)
    }

    pub fn identity(k: &Complex) -> Self {
        let vertex_map = k.vertices().into_iter().map(|v| (v, v)).collect();
        SimplicialMap {
            source: k.clone(),
            target: k.clone(),
            vertex_map,
        }
    }

    /// The map collapsing every vertex of `source` onto `point`.
    pub fn constant(source: &Complex, target: &Complex, point: usize) -> Result<Self> {
        let vertex_map = source.vertices().into_iter().map(|v| (v, point)).collect();
        Self::new(source, target, vertex_map)
    }

    pub fn source(&self) -> &Complex {
        &self.source
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    pub fn vertex_map(&self) -> &BTreeMap<usize, usize> {
        &self.vertex_map
    }

    pub fn apply(&self, v: usize) -> usize {
        self.vertex_map[&v]
    }

    /// Image vertex set of a simplex.
    pub fn image(&self, s: &Simplex) -> Simplex {
        let mut vs: Vec<usize> = s.vertices().iter().map(|v| self.vertex_map[v]).collect();
        vs.sort_unstable();
        vs.dedup();
        Simplex::from_sorted(vs)
    }

    /// Oriented image: `None` if degenerate, else the sorted simplex and the
    /// parity sign of the sorting permutation.
    pub fn oriented_image(&self, s: &Simplex) -> Option<(Simplex, bool)> {
        let vs: Vec<usize> = s.vertices().iter().map(|v| self.vertex_map[v]).collect();
        let (sorted, odd) = sort_with_parity(vs)?;
        Some((Simplex::from_sorted(sorted), odd))
    }

    /// Composition `other ∘ self`.
    pub fn then(&self, other: &SimplicialMap) -> Result<SimplicialMap> {
        if *self.target != *other.source {
            return Err(GerbeError::MalformedMap("composition of non-composable maps".into()));
        }
        let vertex_map = self.vertex_map.iter().map(|(&v, w)| (v, other.vertex_map[w])).collect();
        SimplicialMap::new(&self.source, &other.target, vertex_map)
    }
}

/// Sorts and returns whether the permutation was odd; `None` on repeats.
pub(crate) fn sort_with_parity(mut vs: Vec<usize>) -> Option<(Vec<usize>, bool)> {
    let mut odd = false;
    for i in 1..vs.len() {
        let mut j = i;
        while j > 0 && vs[j - 1] > vs[j] {
            vs.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if vs.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((vs, odd))
}

/// f*c: (f*c)(σ) = ±c(f(σ)) for nondegenerate images, 0 otherwise.
pub fn pullback_cochain(f: &SimplicialMap, c: &Cochain) -> Result<Cochain> {
    if *c.complex().as_ref() != *f.target.as_ref() {
        return Err(GerbeError::Precondition("cochain does not live on the map's target".into()));
    }
    let k = c.degree();
    let w = c.width();
    let mut values = vec![Rational::zero(); f.source.count(k) * w];
    for (i, s) in f.source.simplices(k).iter().enumerate() {
        let Some((image, odd)) = f.oriented_image(s) else {
            continue;
        };
        let j = f
            .target
            .index_of(&image)
            .ok_or_else(|| GerbeError::MalformedMap(format!("{s} maps outside the target")))?;
        for (slot, v) in values[i * w..(i + 1) * w].iter_mut().zip(c.value(j)) {
            *slot = if odd { -v.clone() } else { v.clone() };
        }
    }
    Cochain::from_flat(&f.source, k, c.coefficients().clone(), values)
}

/// A product complex with its projections.
#[derive(Clone, Debug)]
pub struct ProductComplex {
    pub complex: Complex,
    pub left: SimplicialMap,
    pub right: SimplicialMap,
    left_vertices: Vec<usize>,
    right_vertices: Vec<usize>,
}

impl ProductComplex {
    /// Label of the product vertex `(a, b)`.
    pub fn vertex(&self, a: usize, b: usize) -> Option<usize> {
        let i = self.left_vertices.binary_search(&a).ok()?;
        let j = self.right_vertices.binary_search(&b).ok()?;
        Some(i * self.right_vertices.len() + j)
    }

    /// The pair `(a, b)` labelled by `v`.
    pub fn pair(&self, v: usize) -> (usize, usize) {
        let n2 = self.right_vertices.len();
        (self.left_vertices[v / n2], self.right_vertices[v % n2])
    }

    pub fn left_factor(&self) -> &Complex {
        self.left.target()
    }

    pub fn right_factor(&self) -> &Complex {
        self.right.target()
    }

    /// The section `a ↦ (a, point)` of the left projection.
    pub fn section(&self, point: usize) -> Result<SimplicialMap> {
        let map = self
            .left_vertices
            .iter()
            .map(|&a| {
                self.vertex(a, point)
                    .map(|v| (a, v))
                    .ok_or_else(|| GerbeError::Precondition(format!("{point} is not a vertex of the right factor")))
            })
            .collect::<Result<_>>()?;
        SimplicialMap::new(self.left_factor(), &self.complex, map)
    }

    /// Whether a simplex lies in a single fibre `{a} × K₂`.
    pub fn is_vertical(&self, s: &Simplex) -> bool {
        let first = self.pair(s.vertices()[0]).0;
        s.vertices().iter().all(|&v| self.pair(v).0 == first)
    }
}

/// Staircase triangulation of |K₁| × |K₂| under the global vertex orders.
pub fn product_complex(k1: &Complex, k2: &Complex) -> ProductComplex {
    let left_vertices = k1.vertices();
    let right_vertices = k2.vertices();
    let n2 = right_vertices.len();
    let label = |a: usize, b: usize| -> usize {
        let i = left_vertices.binary_search(&a).expect("left vertex");
        let j = right_vertices.binary_search(&b).expect("right vertex");
        i * n2 + j
    };
    let mut generators = Vec::new();
    for s in k1.maximal_simplices() {
        for t in k2.maximal_simplices() {
            let (p, q) = (s.dim(), t.dim());
            for path in lattice_paths(p, q) {
                let (mut i, mut j) = (0, 0);
                let mut verts = vec![label(s.vertices()[0], t.vertices()[0])];
                for right_step in path {
                    if right_step {
                        j += 1;
                    } else {
                        i += 1;
                    }
                    verts.push(label(s.vertices()[i], t.vertices()[j]));
                }
                generators.push(Simplex::from_sorted(verts));
            }
        }
    }
    let complex = Arc::new(SimplicialComplex::from_generators(generators));
    let mut lmap = BTreeMap::new();
    let mut rmap = BTreeMap::new();
    for (i, &a) in left_vertices.iter().enumerate() {
        for (j, &b) in right_vertices.iter().enumerate() {
            lmap.insert(i * n2 + j, a);
            rmap.insert(i * n2 + j, b);
        }
    }
    let left = SimplicialMap::new(&complex, k1, lmap).expect("projection is simplicial");
    let right = SimplicialMap::new(&complex, k2, rmap).expect("projection is simplicial");
    ProductComplex {
        complex,
        left,
        right,
        left_vertices,
        right_vertices,
    }
}

// Monotone paths from (0,0) to (p,q); `true` is a step in the second factor.
fn lattice_paths(p: usize, q: usize) -> Vec<Vec<bool>> {
    if p == 0 && q == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    if p > 0 {
        for mut rest in lattice_paths(p - 1, q) {
            rest.insert(0, false);
            out.push(rest);
        }
    }
    if q > 0 {
        for mut rest in lattice_paths(p, q - 1) {
            rest.insert(0, true);
            out.push(rest);
        }
    }
    out
}
