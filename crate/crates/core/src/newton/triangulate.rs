//! Pulling triangulations of compact faces using only their vertices.

use std::cell::RefCell;
use std::collections::HashMap;

use super::polyhedron::NewtonPolyhedron;

/// Triangulates compact faces by pulling vertices in a fixed priority order.
/// Triangulations of different faces agree on common subfaces.
pub struct Triangulator<'a> {
    poly: &'a NewtonPolyhedron,
    rank: Vec<usize>,
    memo: RefCell<HashMap<usize, Vec<Vec<usize>>>>,
}

impl<'a> Triangulator<'a> {
    /// `order` lists vertex ids from first to last pulled.
    pub fn new(poly: &'a NewtonPolyhedron, order: &[usize]) -> Self {
        let mut rank = vec![usize::MAX; poly.vertices.len()];
        for (r, &v) in order.iter().enumerate() {
            rank[v] = r;
        }
        Triangulator { poly, rank, memo: RefCell::new(HashMap::new()) }
    }

    /// Simplices (sorted vertex id lists) of the triangulation of `sigma`.
    pub fn simplices(&self, sigma: usize) -> Vec<Vec<usize>> {
        if let Some(s) = self.memo.borrow().get(&sigma) {
            return s.clone();
        }
        let face = &self.poly.faces[sigma];
        let out = if face.is_simplex {
            vec![face.vertex_ids.clone()]
        } else {
            let apex =
                *face.vertex_ids.iter().min_by_key(|&&v| (self.rank[v], v)).expect("non-simplex faces have vertices");
            let mut out = Vec::new();
            for tau in self.poly.boundary_faces(sigma) {
                if self.poly.faces[tau].vertex_ids.contains(&apex) {
                    continue;
                }
                for mut s in self.simplices(tau) {
                    s.push(apex);
                    s.sort_unstable();
                    out.push(s);
                }
            }
            out.sort();
            out
        };
        self.memo.borrow_mut().insert(sigma, out.clone());
        out
    }
}
