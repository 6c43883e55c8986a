use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::connection::{holonomy_cocycle, GerbeConnection, HolonomyCocycle};
use crate::cohomology::periods;
use crate::error::{GerbeError, Result};
use crate::exactalg::{frac, Integer, Lattice, Rational};
use crate::gerbe_builder::GerbeData;
use crate::simplicial::{build_complex, pullback_cochain, Chain, Complex, Simplex, SimplicialMap};

/// A closed oriented triangulated surface.
#[derive(Clone, Debug)]
pub struct Surface {
    complex: Complex,
    // ±1 per triangle, so that Σ sign·σ is a cycle
    orientation: Vec<i8>,
}

impl Surface {
    /// Validates the closed-surface conditions and picks a coherent
    /// orientation (the first triangle of each component is positive).
    pub fn new(complex: &Complex) -> Result<Self> {
        if complex.dim() != 2 {
            return Err(GerbeError::MalformedSurface(format!("dimension {} ≠ 2", complex.dim())));
        }
        if complex.maximal_simplices().iter().any(|s| s.dim() != 2) {
            return Err(GerbeError::MalformedSurface("not pure 2-dimensional".into()));
        }
        // every edge in exactly two triangles
        let mut edge_triangles: Vec<Vec<usize>> = vec![Vec::new(); complex.count(1)];
        for t in 0..complex.count(2) {
            for &e in complex.face_indices(2, t) {
                edge_triangles[e].push(t);
            }
        }
        if let Some(e) = edge_triangles.iter().position(|ts| ts.len() != 2) {
            return Err(GerbeError::MalformedSurface(format!(
                "edge {} lies in {} triangles",
                complex.simplices(1)[e],
                edge_triangles[e].len()
            )));
        }
        // every vertex link is a single cycle
        for v in complex.simplices(0) {
            let link_edges: Vec<(usize, usize)> = complex
                .simplices(2)
                .iter()
                .filter(|t| t.contains(v))
                .map(|t| {
                    let rest: Vec<usize> = t.vertices().iter().copied().filter(|&w| w != v.vertices()[0]).collect();
                    (rest[0], rest[1])
                })
                .collect();
            if !is_single_cycle(&link_edges) {
                return Err(GerbeError::MalformedSurface(format!("the link of {v} is not a circle")));
            }
        }
        let orientation = coherent_orientation(complex, &edge_triangles)
            .ok_or_else(|| GerbeError::MalformedSurface("the surface is not orientable".into()))?;
        Ok(Surface {
            complex: complex.clone(),
            orientation,
        })
    }

    pub fn from_triangles(triangles: &[Vec<usize>]) -> Result<Self> {
        Surface::new(&build_complex(triangles)?)
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn orientation(&self) -> &[i8] {
        &self.orientation
    }

    /// The fundamental cycle Σ ±σ.
    pub fn fundamental_cycle(&self) -> Chain {
        let coeffs = self.orientation.iter().map(|&s| Integer::from(s)).collect();
        Chain::from_coefficients(&self.complex, 2, coeffs).expect("one coefficient per triangle")
    }

    /// Same surface with the opposite orientation.
    pub fn reversed(&self) -> Surface {
        Surface {
            complex: self.complex.clone(),
            orientation: self.orientation.iter().map(|s| -s).collect(),
        }
    }

    /// Disjoint union; the second surface's vertices are shifted past the
    /// first's. Returns the union and the shift.
    pub fn disjoint_union(&self, other: &Surface) -> Result<(Surface, usize)> {
        let shift = self.complex.vertices().last().map_or(0, |v| v + 1);
        let mut tris: Vec<Vec<usize>> = self.complex.simplices(2).iter().map(|t| t.vertices().to_vec()).collect();
        tris.extend(
            other
                .complex
                .simplices(2)
                .iter()
                .map(|t| t.vertices().iter().map(|v| v + shift).collect()),
        );
        let complex = build_complex(&tris)?;
        let mut orientation = vec![0i8; complex.count(2)];
        for (t, &s) in self.complex.simplices(2).iter().zip(&self.orientation) {
            orientation[complex.index_of(t).expect("triangle kept")] = s;
        }
        for (t, &s) in other.complex.simplices(2).iter().zip(&other.orientation) {
            let moved = Simplex::new(t.vertices().iter().map(|v| v + shift).collect())?;
            orientation[complex.index_of(&moved).expect("triangle kept")] = s;
        }
        Ok((Surface { complex, orientation }, shift))
    }
}

fn is_single_cycle(edges: &[(usize, usize)]) -> bool {
    if edges.len() < 3 {
        return false;
    }
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(a, b) in edges {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    if adj.values().any(|n| n.len() != 2) {
        return false;
    }
    let start = *adj.keys().next().expect("nonempty");
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &w in &adj[&v] {
            if seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.len() == adj.len()
}

// Induced sign of edge `e` (local face index j) in ∂t is (−1)^j; coherence
// requires the two triangles on an edge to induce opposite signs.
fn coherent_orientation(complex: &Complex, edge_triangles: &[Vec<usize>]) -> Option<Vec<i8>> {
    let n = complex.count(2);
    let sign_in = |t: usize, e: usize| -> i8 {
        let j = complex.face_indices(2, t).iter().position(|&f| f == e).expect("edge of triangle");
        if j % 2 == 0 {
            1
        } else {
            -1
        }
    };
    let mut orient = vec![0i8; n];
    for start in 0..n {
        if orient[start] != 0 {
            continue;
        }
        orient[start] = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(t) = queue.pop_front() {
            for &e in complex.face_indices(2, t) {
                let other = edge_triangles[e].iter().copied().find(|&x| x != t).expect("two triangles");
                let want = -orient[t] * sign_in(t, e) * sign_in(other, e);
                if orient[other] == 0 {
                    orient[other] = want;
                    queue.push_back(other);
                } else if orient[other] != want {
                    return None;
                }
            }
        }
    }
    Some(orient)
}

/// Σ over the surface of the pulled-back holonomy cocycle, mod ℤ.
pub fn surface_holonomy(surface: &Surface, f: &SimplicialMap, conn: &GerbeConnection) -> Result<Rational> {
    let hol = holonomy_cocycle(conn)?;
    surface_holonomy_of(surface, f, &hol)
}

/// As [`surface_holonomy`] for an already computed holonomy cocycle.
pub fn surface_holonomy_of(surface: &Surface, f: &SimplicialMap, hol: &HolonomyCocycle) -> Result<Rational> {
    if **f.source() != *surface.complex {
        return Err(GerbeError::MalformedMap("map source is not the surface".into()));
    }
    let pulled = pullback_cochain(f, &hol.values)?;
    let total = pulled.pair(&surface.fundamental_cycle())?.remove(0);
    Ok(frac(&total))
}

/// Holonomy along a loop, with the lattice it is taken modulo.
#[derive(Clone, Debug, PartialEq)]
pub struct LoopHolonomy {
    /// Canonical representative in ℚ / P_ω.
    pub value: Rational,
    /// ⟨ω, D⟩ before reduction.
    pub raw: Rational,
    pub period_lattice: Lattice,
}

/// Some integral 2-chain with boundary γ.
pub fn bounding_chain(gamma: &Chain) -> Result<Chain> {
    let k = gamma.complex();
    let system = k.boundary(2);
    let x = system
        .smith
        .solve_integer(gamma.coefficients())
        .ok_or_else(|| GerbeError::NoBoundingChain("the loop is not an integral boundary".into()))?;
    Chain::from_coefficients(k, 2, x)
}

/// ⟨ω, D⟩ mod P_ω for a bounding chain D of γ.
pub fn loop_holonomy(gamma: &Chain, d: &Chain, g: &GerbeData) -> Result<LoopHolonomy> {
    if gamma.degree() != 1 || d.degree() != 2 {
        return Err(GerbeError::MalformedInput("expected a 1-cycle and a 2-chain".into()));
    }
    if **gamma.complex() != *g.base || **d.complex() != *g.base {
        return Err(GerbeError::Precondition("chains live on another complex".into()));
    }
    if d.boundary() != *gamma {
        if bounding_chain(gamma).is_err() {
            return Err(GerbeError::NoBoundingChain("the loop bounds no integral chain".into()));
        }
        return Err(GerbeError::Precondition("∂D differs from the loop".into()));
    }
    let raw = g.omega.pair(d)?.remove(0);
    let period_lattice = periods(&g.omega)?;
    let value = period_lattice.canonical_rep(std::slice::from_ref(&raw)).remove(0);
    Ok(LoopHolonomy {
        value,
        raw,
        period_lattice,
    })
}
