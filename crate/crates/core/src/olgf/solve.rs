use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::graph::{classify, descendant_graph, Classification, DescendantGraph, Edge};
use super::OlgfError;
use crate::poly_series::{poly_lcm, BivariatePoly, RationalFunction};
use crate::tree_group::{Engine, Word};

#[derive(Clone, Debug)]
pub struct OlgfResult {
    pub phi: RationalFunction,
    pub psi: RationalFunction,
    /// `det(I - YA)` over the whole descendant graph.
    pub determinant: BivariatePoly,
    pub graph: DescendantGraph,
    pub classification: Classification,
    /// Node merging hit an `Unknown` verdict; the irreducibility flag may be wrong.
    pub unreliable: bool,
}

/// `Phi_w` as a reduced rational function by solving `(I - YA) f = e` over
/// the descendant graph.
pub fn rational_phi(
    eng: &mut Engine<'_>,
    w: &Word,
    node_cap: usize,
) -> Result<OlgfResult, OlgfError> {
    let graph = descendant_graph(eng, w, node_cap);
    let classification = classify(&graph);
    if classification == Classification::NotPhiFiniteWithinBudget {
        return Err(OlgfError::NotPhiFinite { nodes: graph.len() });
    }
    let (f, determinant) = solve_graph(&graph);
    let phi = f[DescendantGraph::ROOT].clone();
    assert!(
        phi.den().y_slice(0).is_one(),
        "denominator must lie in 1 + Y Z[X,Y]"
    );
    let psi = psi_from_phi(&phi);
    Ok(OlgfResult {
        phi,
        psi,
        determinant,
        unreliable: graph.unknown_merges,
        graph,
        classification,
    })
}

/// `Phi` for every node, and the determinant of the full system.
fn solve_graph(g: &DescendantGraph) -> (Vec<RationalFunction>, BivariatePoly) {
    let n = g.len();
    let edges: Vec<Edge> = g.edges.iter().map(|e| e.expect("complete graph")).collect();
    let mut f: Vec<Option<RationalFunction>> = vec![None; n];
    let mut det_total = BivariatePoly::one();
    let y = BivariatePoly::y();
    let xy = BivariatePoly::monomial(1, 1, 1);
    for comp in tarjan_sccs(&edges) {
        let local: BTreeMap<usize, usize> = comp.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let m = comp.len();
        let mut mat = vec![vec![BivariatePoly::zero(); m + 1]; m];
        let mut rhs: Vec<RationalFunction> = vec![RationalFunction::one(); m];
        for (k, &i) in comp.iter().enumerate() {
            mat[k][k] = BivariatePoly::one();
            let terms: Vec<(usize, &BivariatePoly)> = match edges[i] {
                Edge::Pair(a, b) => vec![(a, &y), (b, &y)],
                Edge::Product(a) => vec![(a, &xy)],
            };
            for (c, coef) in terms {
                match local.get(&c) {
                    Some(&lc) => mat[k][lc] = &mat[k][lc] - coef,
                    None => {
                        let fc = f[c].as_ref().expect("successor components solved first");
                        rhs[k] = rhs[k].add(&fc.mul_poly(coef));
                    }
                }
            }
        }
        let d = rhs
            .iter()
            .fold(BivariatePoly::one(), |acc, r| poly_lcm(&acc, r.den()));
        for k in 0..m {
            let scale = d.exact_div(rhs[k].den()).expect("lcm is a multiple");
            mat[k][m] = rhs[k].num() * &scale;
        }
        let (det, sol) = bareiss_solve(mat);
        let den = &det * &d;
        for (k, &i) in comp.iter().enumerate() {
            f[i] = Some(
                RationalFunction::new(sol[k].clone(), den.clone()).expect("nonzero determinant"),
            );
        }
        det_total = &det_total * &det;
    }
    (f.into_iter().map(|x| x.unwrap()).collect(), det_total)
}

/// Fraction-free elimination on an augmented `m x (m+1)` system. Returns the
/// determinant `D` and the vector `D * x`. The leading principal minors are
/// all congruent to 1 mod Y, so no pivoting is needed.
fn bareiss_solve(mut a: Vec<Vec<BivariatePoly>>) -> (BivariatePoly, Vec<BivariatePoly>) {
    let m = a.len();
    let mut prev = BivariatePoly::one();
    for k in 0..m.saturating_sub(1) {
        for i in k + 1..m {
            for j in k + 1..=m {
                let t = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = t.exact_div(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = BivariatePoly::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[m - 1][m - 1].clone();
    let mut x = vec![BivariatePoly::zero(); m];
    for i in (0..m).rev() {
        let mut t = &det * &a[i][m];
        for j in i + 1..m {
            t = &t - &(&a[i][j] * &x[j]);
        }
        x[i] = t
            .exact_div(&a[i][i])
            .expect("Cramer numerator is a polynomial");
    }
    (det, x)
}

/// Strongly connected components, each listed after all components it reaches.
fn tarjan_sccs(edges: &[Edge]) -> Vec<Vec<usize>> {
    let n = edges.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut out = Vec::new();
    let mut counter = 0;
    for start in 0..n {
        if index[start] != usize::MAX {
            continue;
        }
        // explicit DFS: (node, next child position)
        let mut work: Vec<(usize, usize)> = vec![(start, 0)];
        index[start] = counter;
        low[start] = counter;
        counter += 1;
        stack.push(start);
        on_stack[start] = true;
        while let Some(top) = work.last_mut() {
            let (v, pos) = *top;
            let ch = edges[v].children();
            if pos < ch.len() {
                top.1 += 1;
                let w = ch[pos];
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    work.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                work.pop();
                if let Some(&(u, _)) = work.last() {
                    low[u] = low[u].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let x = stack.pop().unwrap();
                        on_stack[x] = false;
                        comp.push(x);
                        if x == v {
                            break;
                        }
                    }
                    out.push(comp);
                }
            }
        }
    }
    out
}

fn one_minus_2y() -> BivariatePoly {
    BivariatePoly::one_minus(2, 0, 1)
}

/// `Psi = ((1-2Y) Phi - 1) / (X - 2)`
pub fn psi_from_phi(phi: &RationalFunction) -> RationalFunction {
    let x_minus_2 = BivariatePoly::from_terms([(1, 0, 1), (0, 0, -2)]);
    let num = &(phi.num() * &one_minus_2y()) - phi.den();
    RationalFunction::new(num, phi.den() * &x_minus_2).expect("nonzero")
}

/// `Phi = (1 + (X-2) Psi) / (1 - 2Y)`
pub fn phi_from_psi(psi: &RationalFunction) -> RationalFunction {
    let x_minus_2 = BivariatePoly::from_terms([(1, 0, 1), (0, 0, -2)]);
    let num = psi.den() + &(psi.num() * &x_minus_2);
    RationalFunction::new(num, psi.den() * &one_minus_2y()).expect("nonzero")
}
