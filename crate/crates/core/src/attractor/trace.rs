//! Grid tracing of `A = { |t1(x)| = |t2(x)| }`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::Window;
use crate::cubic::{family_cubic, solve_chain, Cubic};
use crate::error::{Error, Result};

type C = Complex64;

/// Pairing is ambiguous when the best and second-best candidate distances
/// are this close.
const AMBIGUITY: f64 = 1e-6;
/// A step is trusted when no root moves more than this fraction of the
/// smallest root separation.
const STEP_FRACTION: f64 = 0.3;
const MAX_DEPTH: u32 = 24;
const EDGE_STEPS: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CurveSample {
    pub x: C,
    /// `|t2(x)| - |t1(x)|`.
    pub residual: f64,
    /// Index of the polyline this sample belongs to.
    pub branch: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AttractorCurve {
    pub window: Window,
    pub grid: (usize, usize),
    pub tol: f64,
    pub y0: C,
    /// Polylines one after another, each ordered along the curve.
    pub samples: Vec<CurveSample>,
}

impl AttractorCurve {
    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn branch_count(&self) -> usize {
        self.samples.last().map_or(0, |s| s.branch + 1)
    }

    pub fn branches(&self) -> Vec<&[CurveSample]> {
        self.samples.chunk_by(|a, b| a.branch == b.branch).collect()
    }

    pub fn points(&self) -> impl Iterator<Item = C> + '_ {
        self.samples.iter().map(|s| s.x)
    }

    /// Distance from `z` to the nearest sample.
    pub fn distance_to(&self, z: C) -> f64 {
        self.points().map(|p| (p - z).norm()).fold(f64::INFINITY, f64::min)
    }
}

struct Tracer {
    y0: C,
    tol: f64,
}

fn argmin_modulus(r: &[C; 3]) -> usize {
    let mut k = 0;
    for i in 1..3 {
        if r[i].norm() < r[k].norm() {
            k = i;
        }
    }
    k
}

fn min_separation(r: &[C; 3]) -> f64 {
    (r[0] - r[1]).norm().min((r[0] - r[2]).norm()).min((r[1] - r[2]).norm())
}

/// Nearest-neighbour pairing of `next` to `prev`; `None` when it is not a
/// bijection. Also returns the largest move and whether any pairing was
/// ambiguous, per root of `prev`.
fn pair(prev: &[C; 3], next: &[C; 3]) -> (Option<[C; 3]>, f64, [bool; 3]) {
    let mut out = [C::new(0.0, 0.0); 3];
    let mut used = [false; 3];
    let mut ok = true;
    let mut moved = 0.0f64;
    let mut amb = [false; 3];
    for i in 0..3 {
        let mut d: Vec<(f64, usize)> = (0..3).map(|j| ((next[j] - prev[i]).norm(), j)).collect();
        d.sort_by(|a, b| a.0.total_cmp(&b.0));
        amb[i] = d[1].0 - d[0].0 < AMBIGUITY;
        let j = d[0].1;
        if used[j] {
            ok = false;
        }
        used[j] = true;
        out[i] = next[j];
        moved = moved.max(d[0].0);
    }
    (ok.then_some(out), moved, amb)
}

impl Tracer {
    fn cubic(&self, x: C) -> Cubic {
        family_cubic(x, self.y0).expect("y0 checked")
    }

    fn roots(&self, x: C) -> [C; 3] {
        solve_chain(&self.cubic(x)).0.as_array()
    }

    /// Continues the labelled roots `r0` at `x0` to `x1`, appending the
    /// intermediate points.
    fn advance(&self, x0: C, r0: [C; 3], x1: C, depth: u32, path: &mut Vec<(C, [C; 3])>) -> Result<()> {
        let r1 = self.roots(x1);
        let (paired, moved, amb) = pair(&r0, &r1);
        let sep = min_separation(&r0);
        if let Some(p) = paired {
            if moved <= STEP_FRACTION * sep && !amb.iter().any(|&a| a) {
                path.push((x1, p));
                return Ok(());
            }
        }
        if depth < MAX_DEPTH {
            let xm = 0.5 * (x0 + x1);
            self.advance(x0, r0, xm, depth + 1, path)?;
            let (_, rm) = *path.last().unwrap();
            return self.advance(xm, rm, x1, depth + 1, path);
        }
        // Only a mix-up involving the smallest root changes the sign test.
        let k = argmin_modulus(&r0);
        let troubled = amb[k] || paired.is_none();
        if troubled {
            return Err(Error::GridTooCoarse { re: x0.re, im: x0.im });
        }
        path.push((x1, paired.unwrap()));
        Ok(())
    }

    /// `|t_a| - |t_b|` along a short segment where the labels stay valid.
    fn bisect(&self, x0: C, r0: [C; 3], x1: C, a: usize, b: usize) -> (C, f64) {
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        let mut best = (x0, f64::INFINITY);
        for _ in 0..200 {
            let s = 0.5 * (lo + hi);
            let x = x0 + (x1 - x0) * s;
            let r = self.roots(x);
            let p = pair(&r0, &r).0.unwrap_or(r);
            let g = p[a].norm() - p[b].norm();
            let resid = self.residual(x);
            if resid < best.1 {
                best = (x, resid);
            }
            if resid <= self.tol * 0.5 || hi - lo < 1e-17 {
                break;
            }
            if g < 0.0 {
                lo = s;
            } else {
                hi = s;
            }
        }
        best
    }

    fn residual(&self, x: C) -> f64 {
        let (r, _) = solve_chain(&self.cubic(x));
        r.t2.norm() - r.t1.norm()
    }

    fn edge_crossings(&self, xa: C, ra: [C; 3], xb: C) -> Result<Vec<(C, f64)>> {
        let mut path = vec![(xa, ra)];
        for k in 1..=EDGE_STEPS {
            let x = xa + (xb - xa) * (k as f64 / EDGE_STEPS as f64);
            let (x0, r0) = *path.last().unwrap();
            self.advance(x0, r0, x, 0, &mut path)?;
        }
        let mut out = Vec::new();
        for w in path.windows(2) {
            let (x0, r0) = w[0];
            let (x1, r1) = w[1];
            let a = argmin_modulus(&r0);
            let b = argmin_modulus(&r1);
            if a != b {
                out.push(self.bisect(x0, r0, x1, a, b));
            }
        }
        Ok(out)
    }

    /// Point in the cell where all three moduli agree, by Newton on
    /// `(|t_a| - |t_b|, |t_b| - |t_c|)` with labels fixed at the centre.
    fn triple_point(&self, center: C, half: (f64, f64)) -> Option<(C, f64)> {
        let r0 = self.roots(center);
        if min_separation(&r0) < 1e-8 {
            return None;
        }
        let g = |x: C| -> Option<[f64; 2]> {
            let r = pair(&r0, &self.roots(x)).0?;
            Some([r[0].norm() - r[1].norm(), r[1].norm() - r[2].norm()])
        };
        let mut x = center;
        let h = 1e-7 * half.0.max(half.1);
        for _ in 0..40 {
            let f = g(x)?;
            if f[0].abs().max(f[1].abs()) <= 0.25 * self.tol {
                break;
            }
            let fu = g(x + h)?;
            let fv = g(x + C::new(0.0, h))?;
            let j = [[(fu[0] - f[0]) / h, (fv[0] - f[0]) / h], [(fu[1] - f[1]) / h, (fv[1] - f[1]) / h]];
            let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
            if det.abs() < 1e-300 {
                return None;
            }
            let du = (f[0] * j[1][1] - f[1] * j[0][1]) / det;
            let dv = (j[0][0] * f[1] - j[1][0] * f[0]) / det;
            x -= C::new(du, dv);
        }
        let inside = (x.re - center.re).abs() <= half.0 && (x.im - center.im).abs() <= half.1;
        let resid = self.residual(x);
        (inside && resid <= self.tol).then_some((x, resid))
    }
}

/// Traces `A` for the family cubic over `window` on a grid of
/// `grid.0 x grid.1` nodes.
///
/// Every edge is walked with the roots continued from its first node; a
/// change in which branch is smallest marks a crossing, refined by bisection
/// on `|t_a| - |t_b|`. Crossings sharing a cell are joined (marching squares);
/// cells entered more than twice get a triple-point junction when one exists.
pub fn trace_attractor(window: &Window, grid: (usize, usize), tol: f64, y0: C) -> Result<AttractorCurve> {
    let (nx, ny) = grid;
    if nx < 16 || ny < 16 {
        return Err(Error::InvalidArgument(format!("grid must have at least 16 nodes per axis, got {nx}x{ny}")));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!("tol must be positive, got {tol}")));
    }
    if window.is_empty() {
        return Err(Error::InvalidArgument("window is empty".into()));
    }
    if y0 == C::new(0.0, 0.0) {
        return Err(Error::ZeroY);
    }
    let tr = Tracer { y0, tol };
    let dx = (window.re_max - window.re_min) / (nx - 1) as f64;
    let dy = (window.im_max - window.im_min) / (ny - 1) as f64;
    let node = |i: usize, j: usize| C::new(window.re_min + i as f64 * dx, window.im_min + j as f64 * dy);

    let roots: Vec<[C; 3]> = (0..nx * ny).into_par_iter().map(|k| tr.roots(node(k % nx, k / nx))).collect();
    let at = |i: usize, j: usize| roots[j * nx + i];

    // Horizontal edges first (i, j) -> (i+1, j), then vertical (i, j) -> (i, j+1).
    let n_h = (nx - 1) * ny;
    let n_v = nx * (ny - 1);
    let h_id = |i: usize, j: usize| j * (nx - 1) + i;
    let v_id = |i: usize, j: usize| n_h + j * nx + i;
    let per_edge: Vec<Result<Vec<(C, f64)>>> = (0..n_h + n_v)
        .into_par_iter()
        .map(|e| {
            if e < n_h {
                let (i, j) = (e % (nx - 1), e / (nx - 1));
                tr.edge_crossings(node(i, j), at(i, j), node(i + 1, j))
            } else {
                let (i, j) = ((e - n_h) % nx, (e - n_h) / nx);
                tr.edge_crossings(node(i, j), at(i, j), node(i, j + 1))
            }
        })
        .collect();

    let mut pts: Vec<(C, f64)> = Vec::new();
    let mut on_edge: Vec<Vec<usize>> = vec![Vec::new(); n_h + n_v];
    for (e, r) in per_edge.into_iter().enumerate() {
        for c in r? {
            on_edge[e].push(pts.len());
            pts.push(c);
        }
    }

    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); pts.len()];
    let link = |adj: &mut Vec<Vec<usize>>, a: usize, b: usize| {
        if a != b && !adj[a].contains(&b) {
            adj[a].push(b);
            adj[b].push(a);
        }
    };
    for j in 0..ny - 1 {
        for i in 0..nx - 1 {
            let mut ids: Vec<usize> = Vec::new();
            for e in [h_id(i, j), v_id(i + 1, j), h_id(i, j + 1), v_id(i, j)] {
                ids.extend_from_slice(&on_edge[e]);
            }
            match ids.len() {
                0 => {}
                2 => link(&mut adj, ids[0], ids[1]),
                _ => {
                    let center = node(i, j) + C::new(0.5 * dx, 0.5 * dy);
                    if let Some(tp) = tr.triple_point(center, (0.5 * dx, 0.5 * dy)) {
                        let k = pts.len();
                        pts.push(tp);
                        adj.push(Vec::new());
                        for &a in &ids {
                            link(&mut adj, k, a);
                        }
                    } else {
                        // Pair the closest crossings first.
                        let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
                        for a in 0..ids.len() {
                            for b in a + 1..ids.len() {
                                pairs.push(((pts[ids[a]].0 - pts[ids[b]].0).norm(), ids[a], ids[b]));
                            }
                        }
                        pairs.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.cmp(&q.1)).then(p.2.cmp(&q.2)));
                        let mut used: Vec<usize> = Vec::new();
                        for (_, a, b) in pairs {
                            if !used.contains(&a) && !used.contains(&b) {
                                link(&mut adj, a, b);
                                used.push(a);
                                used.push(b);
                            }
                        }
                    }
                }
            }
        }
    }

    let samples = polylines(&adj)
        .into_iter()
        .enumerate()
        .flat_map(|(b, line)| {
            let pts = &pts;
            line.into_iter().map(move |k| CurveSample { x: pts[k].0, residual: pts[k].1, branch: b })
        })
        .collect();
    Ok(AttractorCurve { window: *window, grid, tol, y0, samples })
}

/// Splits a graph into maximal paths between nodes of degree other than 2,
/// then the remaining cycles.
fn polylines(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut seen = std::collections::HashSet::new();
    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    let mut out = Vec::new();
    let walk = |start: usize, first: usize, seen: &mut std::collections::HashSet<(usize, usize)>| {
        let mut line = vec![start];
        let (mut prev, mut cur) = (start, first);
        seen.insert(key(prev, cur));
        loop {
            line.push(cur);
            if adj[cur].len() != 2 || cur == start {
                break;
            }
            let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
            if !seen.insert(key(cur, next)) {
                break;
            }
            prev = cur;
            cur = next;
        }
        line
    };
    for s in 0..adj.len() {
        if adj[s].len() != 2 {
            if adj[s].is_empty() {
                out.push(vec![s]);
            }
            for &f in &adj[s] {
                if !seen.contains(&key(s, f)) {
                    out.push(walk(s, f, &mut seen));
                }
            }
        }
    }
    for s in 0..adj.len() {
        for &f in &adj[s] {
            if !seen.contains(&key(s, f)) {
                out.push(walk(s, f, &mut seen));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn one() -> C {
        C::new(1.0, 0.0)
    }

    #[test]
    fn rejects_bad_arguments() {
        let w = Window::square(2.0);
        assert!(trace_attractor(&w, (8, 16), 1e-9, one()).is_err());
        assert!(trace_attractor(&w, (16, 16), 0.0, one()).is_err());
        assert_eq!(trace_attractor(&w, (16, 16), 1e-9, C::new(0.0, 0.0)), Err(Error::ZeroY));
    }

    #[test]
    fn coarse_trace_follows_three_rays() {
        let curve = trace_attractor(&Window::square(2.0), (32, 32), 1e-9, one()).unwrap();
        assert!(!curve.is_empty());
        assert!(curve.distance_to(C::new(0.0, 0.0)) <= 1e-9);
        for s in &curve.samples {
            assert!(s.residual <= 1e-9);
            let ang = [PI, PI / 3.0, -PI / 3.0]
                .iter()
                .map(|a| (s.x * C::from_polar(1.0, -a)).im.abs() + if (s.x * C::from_polar(1.0, -a)).re < -1e-9 { 1.0 } else { 0.0 })
                .fold(f64::INFINITY, f64::min);
            assert!(ang < 1e-6, "{:?}", s.x);
        }
        assert_eq!(curve.branch_count(), 3);
    }

    #[test]
    fn polylines_split_at_junctions() {
        // A star with centre 0 and arms 1-2, 3, 4.
        let adj = vec![vec![1, 3, 4], vec![0, 2], vec![1], vec![0], vec![0]];
        let lines = polylines(&adj);
        assert_eq!(lines, vec![vec![0, 1, 2], vec![0, 3], vec![0, 4]]);
        let ring = vec![vec![1, 2], vec![0, 2], vec![1, 0]];
        assert_eq!(polylines(&ring), vec![vec![0, 1, 2, 0]]);
    }
}
