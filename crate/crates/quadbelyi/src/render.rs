//! Best-effort SVG drawings of genus 0 and genus 1 dessins.
//!
//! Genus 0 uses a Tutte-style barycentric layout: every edge is subdivided at a
//! midpoint (so multi-edges become distinct paths), the corners of a
//! maximal-valency face are pinned to a convex polygon in boundary-walk order,
//! and every other node is placed at the average of its neighbors.
//!
//! Genus 1 uses a doubly periodic harmonic layout. Edges carry integer lattice
//! offsets: a spanning tree fixes the gauge (tree edges have offset zero) and the
//! offsets of the remaining edges form an integral basis of the solution lattice
//! of the face-closure equations, computed by column reduction over the integers.
//! Vertex positions then solve the graph Laplacian system with those offsets as
//! the right-hand side, one fundamental domain is drawn, and each edge leaves the
//! domain toward the translated copy of its far endpoint.
//!
//! Correctness here is structural, not aesthetic: node and edge counts match the
//! dessin, coloring respects bipartiteness, torus endpoints reproduce under both
//! lattice translations, and edge crossings are reported as warnings rather than
//! errors.

use crate::dessin::Dessin;

#[derive(Debug, thiserror::Error)]
pub enum RenderError {
    #[error("cannot render genus {genus}; only genus 0 and 1 are supported")]
    UnsupportedGenus { genus: usize },
}

/// Shape of the drawn fundamental domain for torus layouts. Cosmetic only.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DomainShape {
    Rectangle,
    Rhombus,
}

#[derive(Clone, Debug)]
pub struct RenderOptions {
    pub shape: DomainShape,
    /// Pixels per layout unit.
    pub scale: f64,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions { shape: DomainShape::Rectangle, scale: 170.0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeColor {
    Black,
    White,
}

#[derive(Clone, Debug)]
pub struct RenderNode {
    pub pos: [f64; 2],
    pub color: NodeColor,
}

#[derive(Clone, Debug)]
pub struct RenderEdge {
    /// Node index of the black endpoint.
    pub from: usize,
    /// Node index of the white endpoint.
    pub to: usize,
    /// Drawn polyline; for the torus the last point may lie outside the domain,
    /// at a lattice translate of the `to` node.
    pub points: Vec<[f64; 2]>,
}

#[derive(Clone, Debug)]
pub struct TorusFrame {
    pub v1: [f64; 2],
    pub v2: [f64; 2],
    pub shape: DomainShape,
}

#[derive(Clone, Debug)]
pub struct RenderLayout {
    /// Blacks first (in [`Dessin::blacks`] order), then whites.
    pub nodes: Vec<RenderNode>,
    /// One entry per dessin edge, in edge order.
    pub edges: Vec<RenderEdge>,
    /// Lattice data for genus 1 layouts.
    pub torus: Option<TorusFrame>,
    pub warnings: Vec<String>,
}

/// Compute a drawing for a genus 0 or genus 1 dessin.
pub fn layout_dessin(d: &Dessin, opts: &RenderOptions) -> Result<RenderLayout, RenderError> {
    match d.genus() {
        0 => Ok(layout_genus0(d)),
        1 => Ok(layout_genus1(d, opts.shape)),
        genus => Err(RenderError::UnsupportedGenus { genus }),
    }
}

/// Render a dessin straight to SVG 1.1 text.
pub fn render_svg(d: &Dessin, opts: &RenderOptions) -> Result<String, RenderError> {
    Ok(svg_of_layout(&layout_dessin(d, opts)?, opts))
}

struct Incidence {
    /// Black cycle index of each edge.
    vb: Vec<usize>,
    /// White cycle index of each edge (offset by the number of blacks).
    vw: Vec<usize>,
    blacks: usize,
    whites: usize,
}

fn incidence(d: &Dessin) -> Incidence {
    let n = d.degree();
    let blacks = d.blacks();
    let whites = d.whites();
    let mut vb = vec![0usize; n];
    let mut vw = vec![0usize; n];
    for (i, cyc) in blacks.iter().enumerate() {
        for &e in cyc {
            vb[e] = i;
        }
    }
    for (i, cyc) in whites.iter().enumerate() {
        for &e in cyc {
            vw[e] = blacks.len() + i;
        }
    }
    Incidence { vb, vw, blacks: blacks.len(), whites: whites.len() }
}

/// Solve `a x = b` for a small dense symmetric positive definite system.
fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<[f64; 2]>) -> Vec<[f64; 2]> {
    let n = a.len();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, piv);
        b.swap(col, piv);
        let p = a[col][col];
        debug_assert!(p.abs() > 1e-12, "layout system is singular");
        for row in (col + 1)..n {
            let f = a[row][col] / p;
            if f == 0.0 {
                continue;
            }
            for k in col..n {
                a[row][k] -= f * a[col][k];
            }
            b[row][0] -= f * b[col][0];
            b[row][1] -= f * b[col][1];
        }
    }
    let mut x = vec![[0.0f64; 2]; n];
    for row in (0..n).rev() {
        let mut s = b[row];
        for k in (row + 1)..n {
            s[0] -= a[row][k] * x[k][0];
            s[1] -= a[row][k] * x[k][1];
        }
        x[row] = [s[0] / a[row][row], s[1] / a[row][row]];
    }
    x
}

fn layout_genus0(d: &Dessin) -> RenderLayout {
    let n = d.degree();
    let inc = incidence(d);
    let nv = inc.blacks + inc.whites;
    // layout nodes: vertices 0..nv, then one midpoint per edge
    let total = nv + n;
    let mid = |e: usize| nv + e;

    // boundary walk of a maximal-valency face: alternating corners
    // white(e), mid(e), black(e), mid(sigma0^-1 e) for e along the face cycle
    let faces = d.faces();
    let outer = faces
        .iter()
        .max_by_key(|c| c.len())
        .expect("a dessin has at least one face");
    let s0inv = d.sigma0().inverse();
    let mut walk = Vec::with_capacity(4 * outer.len());
    for &e in outer {
        let f = s0inv.apply(e);
        walk.extend_from_slice(&[inc.vw[e], mid(e), inc.vb[e], mid(f)]);
    }
    let mut pin = vec![None; total];
    let mut ring = Vec::new();
    for &node in &walk {
        if pin[node].is_none() {
            pin[node] = Some(ring.len());
            ring.push(node);
        }
    }
    let k = ring.len() as f64;
    let mut pos = vec![[0.0f64; 2]; total];
    for (i, &node) in ring.iter().enumerate() {
        let th = std::f64::consts::TAU * (i as f64) / k;
        pos[node] = [th.cos(), th.sin()];
    }

    // neighbors: each midpoint joins its two endpoints
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); total];
    for e in 0..n {
        adj[inc.vb[e]].push(mid(e));
        adj[inc.vw[e]].push(mid(e));
        adj[mid(e)].push(inc.vb[e]);
        adj[mid(e)].push(inc.vw[e]);
    }
    let free: Vec<usize> = (0..total).filter(|&u| pin[u].is_none()).collect();
    if !free.is_empty() {
        let index: std::collections::HashMap<usize, usize> =
            free.iter().enumerate().map(|(i, &u)| (u, i)).collect();
        let mut a = vec![vec![0.0f64; free.len()]; free.len()];
        let mut b = vec![[0.0f64; 2]; free.len()];
        for (i, &u) in free.iter().enumerate() {
            a[i][i] = adj[u].len() as f64;
            for &v in &adj[u] {
                match index.get(&v) {
                    Some(&j) => a[i][j] -= 1.0,
                    None => {
                        b[i][0] += pos[v][0];
                        b[i][1] += pos[v][1];
                    }
                }
            }
        }
        let x = solve_dense(a, b);
        for (i, &u) in free.iter().enumerate() {
            pos[u] = x[i];
        }
    }

    let nodes = node_list(&inc, &pos);
    let edges: Vec<RenderEdge> = (0..n)
        .map(|e| RenderEdge {
            from: inc.vb[e],
            to: inc.vw[e],
            points: vec![pos[inc.vb[e]], pos[mid(e)], pos[inc.vw[e]]],
        })
        .collect();
    let mut warnings = Vec::new();
    warn_crossings(&edges, &[], &mut warnings);
    RenderLayout { nodes, edges, torus: None, warnings }
}

fn node_list(inc: &Incidence, pos: &[[f64; 2]]) -> Vec<RenderNode> {
    (0..inc.blacks + inc.whites)
        .map(|u| RenderNode {
            pos: pos[u],
            color: if u < inc.blacks { NodeColor::Black } else { NodeColor::White },
        })
        .collect()
}

/// Integral basis of `{ z : rows * z = 0 }` by unimodular column reduction.
fn integer_kernel(mut rows: Vec<Vec<i64>>, cols: usize) -> Vec<Vec<i64>> {
    let mut u: Vec<Vec<i64>> = (0..cols)
        .map(|i| (0..cols).map(|j| i64::from(i == j)).collect())
        .collect();
    let col_op = |rows: &mut Vec<Vec<i64>>, u: &mut Vec<Vec<i64>>, dst: usize, src: usize, q: i64| {
        for r in rows.iter_mut() {
            r[dst] -= q * r[src];
        }
        for r in u.iter_mut() {
            r[dst] -= q * r[src];
        }
    };
    let mut lead = 0usize;
    let nrows = rows.len();
    for i in 0..nrows {
        loop {
            let mut best: Option<usize> = None;
            for j in lead..cols {
                if rows[i][j] != 0 && best.is_none_or(|b| rows[i][j].abs() < rows[i][b].abs()) {
                    best = Some(j);
                }
            }
            let Some(p) = best else { break };
            let mut done = true;
            for j in lead..cols {
                if j != p && rows[i][j] != 0 {
                    let q = rows[i][j].div_euclid(rows[i][p]);
                    col_op(&mut rows, &mut u, j, p, q);
                    done = done && rows[i][j] == 0;
                }
            }
            if done {
                for r in rows.iter_mut() {
                    r.swap(lead, p);
                }
                for r in u.iter_mut() {
                    r.swap(lead, p);
                }
                lead += 1;
                break;
            }
        }
    }
    (lead..cols).map(|j| u.iter().map(|r| r[j]).collect()).collect()
}

fn layout_genus1(d: &Dessin, shape: DomainShape) -> RenderLayout {
    let n = d.degree();
    let inc = incidence(d);
    let nv = inc.blacks + inc.whites;

    // spanning tree of the vertex graph
    let mut tree_edge = vec![false; n];
    let mut seen = vec![false; nv];
    seen[0] = true;
    let mut frontier = vec![0usize];
    while let Some(u) = frontier.pop() {
        for e in 0..n {
            let (a, b) = (inc.vb[e], inc.vw[e]);
            let v = if a == u { b } else if b == u { a } else { continue };
            if !seen[v] {
                seen[v] = true;
                tree_edge[e] = true;
                frontier.push(v);
            }
        }
    }
    debug_assert!(seen.iter().all(|&s| s), "dessin vertex graph is connected");

    // face-closure equations over the non-tree edges: walking a face, edge e is
    // crossed white-to-black and sigma0^-1(e) black-to-white
    let nontree: Vec<usize> = (0..n).filter(|&e| !tree_edge[e]).collect();
    let col_of: std::collections::HashMap<usize, usize> =
        nontree.iter().enumerate().map(|(j, &e)| (e, j)).collect();
    let s0inv = d.sigma0().inverse();
    let rows: Vec<Vec<i64>> = d
        .faces()
        .iter()
        .map(|cyc| {
            let mut row = vec![0i64; nontree.len()];
            for &e in cyc {
                if let Some(&j) = col_of.get(&e) {
                    row[j] -= 1;
                }
                if let Some(&j) = col_of.get(&s0inv.apply(e)) {
                    row[j] += 1;
                }
            }
            row
        })
        .collect();
    let basis = integer_kernel(rows, nontree.len());
    assert_eq!(basis.len(), 2, "genus 1 offset lattice has rank 2");

    // lattice offset of each edge, black to white
    let mut z = vec![[0i64; 2]; n];
    for (j, &e) in nontree.iter().enumerate() {
        z[e] = [basis[0][j], basis[1][j]];
    }

    let (v1, v2) = match shape {
        DomainShape::Rectangle => ([1.0, 0.0], [0.0, 1.0]),
        DomainShape::Rhombus => ([1.0, 0.0], [0.5, 3f64.sqrt() / 2.0]),
    };
    let lat = |k: [i64; 2]| -> [f64; 2] {
        [
            k[0] as f64 * v1[0] + k[1] as f64 * v2[0],
            k[0] as f64 * v1[1] + k[1] as f64 * v2[1],
        ]
    };

    // harmonic positions: deg(u) x_u - sum of neighbors = signed offset sum,
    // with vertex 0 pinned at the origin
    let mut a = vec![vec![0.0f64; nv - 1]; nv - 1];
    let mut b = vec![[0.0f64; 2]; nv - 1];
    for e in 0..n {
        let (s, t) = (inc.vb[e], inc.vw[e]);
        let o = lat(z[e]);
        for (me, other, sign) in [(s, t, 1.0), (t, s, -1.0)] {
            if me == 0 {
                continue;
            }
            let i = me - 1;
            a[i][i] += 1.0;
            if other > 0 {
                a[i][other - 1] -= 1.0;
            }
            b[i][0] += sign * o[0];
            b[i][1] += sign * o[1];
        }
    }
    let x = solve_dense(a, b);
    let mut pos = vec![[0.0f64; 2]; nv];
    for u in 1..nv {
        pos[u] = x[u - 1];
    }

    // reduce every vertex into the base fundamental domain
    let det = v1[0] * v2[1] - v1[1] * v2[0];
    let cell = |p: [f64; 2]| -> [f64; 2] {
        let l1 = (p[0] * v2[1] - p[1] * v2[0]) / det;
        let l2 = (v1[0] * p[1] - v1[1] * p[0]) / det;
        let (f1, f2) = (l1 - l1.floor(), l2 - l2.floor());
        [f1 * v1[0] + f2 * v2[0], f1 * v1[1] + f2 * v2[1]]
    };
    let disp: Vec<[f64; 2]> = (0..n)
        .map(|e| {
            let o = lat(z[e]);
            [
                pos[inc.vw[e]][0] + o[0] - pos[inc.vb[e]][0],
                pos[inc.vw[e]][1] + o[1] - pos[inc.vb[e]][1],
            ]
        })
        .collect();
    for p in pos.iter_mut() {
        *p = cell(*p);
    }

    let mut warnings = Vec::new();
    // parallel edges with identical displacement get a visible bend
    let mut groups: std::collections::HashMap<(usize, usize, [i64; 2]), Vec<usize>> =
        std::collections::HashMap::new();
    for e in 0..n {
        groups.entry((inc.vb[e], inc.vw[e], z[e])).or_default().push(e);
    }
    let mut bend = vec![0.0f64; n];
    for members in groups.values() {
        for (i, &e) in members.iter().enumerate() {
            bend[e] = 0.16 * (i as f64 - (members.len() as f64 - 1.0) / 2.0);
        }
    }
    let edges: Vec<RenderEdge> = (0..n)
        .map(|e| {
            let p0 = pos[inc.vb[e]];
            let p1 = [p0[0] + disp[e][0], p0[1] + disp[e][1]];
            let points = if bend[e] == 0.0 {
                vec![p0, p1]
            } else {
                let len = disp[e][0].hypot(disp[e][1]).max(1e-9);
                let normal = [-disp[e][1] / len, disp[e][0] / len];
                vec![
                    p0,
                    [
                        (p0[0] + p1[0]) / 2.0 + bend[e] * normal[0],
                        (p0[1] + p1[1]) / 2.0 + bend[e] * normal[1],
                    ],
                    p1,
                ]
            };
            RenderEdge { from: inc.vb[e], to: inc.vw[e], points }
        })
        .collect();

    // far endpoints must land on lattice translates of the white node
    for (e, edge) in edges.iter().enumerate() {
        let end = *edge.points.last().unwrap();
        let w = pos[inc.vw[e]];
        let d0 = [end[0] - w[0], end[1] - w[1]];
        let l1 = (d0[0] * v2[1] - d0[1] * v2[0]) / det;
        let l2 = (v1[0] * d0[1] - v1[1] * d0[0]) / det;
        if (l1 - l1.round()).abs() > 1e-6 || (l2 - l2.round()).abs() > 1e-6 {
            warnings.push(format!("edge {e} endpoint is off-lattice"));
        }
    }
    let translated = translated_copies(&edges, v1, v2);
    warn_crossings(&edges, &translated, &mut warnings);

    RenderLayout {
        nodes: node_list(&inc, &pos),
        edges,
        torus: Some(TorusFrame { v1, v2, shape }),
        warnings,
    }
}

fn translated_copies(edges: &[RenderEdge], v1: [f64; 2], v2: [f64; 2]) -> Vec<RenderEdge> {
    let mut out = Vec::new();
    for (i, j) in [(1, 0), (0, 1), (1, 1), (-1, 0), (0, -1), (-1, -1), (1, -1), (-1, 1)] {
        let t = [
            i as f64 * v1[0] + j as f64 * v2[0],
            i as f64 * v1[1] + j as f64 * v2[1],
        ];
        for e in edges {
            out.push(RenderEdge {
                from: e.from,
                to: e.to,
                points: e.points.iter().map(|p| [p[0] + t[0], p[1] + t[1]]).collect(),
            });
        }
    }
    out
}

fn segments(edges: &[RenderEdge]) -> Vec<([f64; 2], [f64; 2])> {
    edges
        .iter()
        .flat_map(|e| e.points.windows(2).map(|w| (w[0], w[1])).collect::<Vec<_>>())
        .collect()
}

fn crosses(a: ([f64; 2], [f64; 2]), b: ([f64; 2], [f64; 2])) -> bool {
    let eps = 1e-9;
    let near = |p: [f64; 2], q: [f64; 2]| (p[0] - q[0]).abs() < eps && (p[1] - q[1]).abs() < eps;
    // shared endpoints are contacts, not crossings
    if near(a.0, b.0) || near(a.0, b.1) || near(a.1, b.0) || near(a.1, b.1) {
        return false;
    }
    let orient = |p: [f64; 2], q: [f64; 2], r: [f64; 2]| {
        (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    };
    let (d1, d2) = (orient(a.0, a.1, b.0), orient(a.0, a.1, b.1));
    let (d3, d4) = (orient(b.0, b.1, a.0), orient(b.0, b.1, a.1));
    d1 * d2 < -eps && d3 * d4 < -eps
}

fn warn_crossings(edges: &[RenderEdge], extra: &[RenderEdge], warnings: &mut Vec<String>) {
    let base = segments(edges);
    let other = segments(extra);
    let mut count = 0usize;
    for (i, &s) in base.iter().enumerate() {
        for &t in base.iter().skip(i + 1) {
            count += usize::from(crosses(s, t));
        }
        for &t in &other {
            count += usize::from(crosses(s, t));
        }
    }
    if count > 0 {
        warnings.push(format!("layout has {count} edge crossing(s)"));
    }
}

fn svg_of_layout(layout: &RenderLayout, opts: &RenderOptions) -> String {
    use std::fmt::Write;

    let mut all: Vec<[f64; 2]> = layout.nodes.iter().map(|v| v.pos).collect();
    for e in &layout.edges {
        all.extend_from_slice(&e.points);
    }
    let frame: Vec<[f64; 2]> = layout
        .torus
        .as_ref()
        .map(|t| {
            vec![
                [0.0, 0.0],
                t.v1,
                [t.v1[0] + t.v2[0], t.v1[1] + t.v2[1]],
                t.v2,
            ]
        })
        .unwrap_or_default();
    all.extend_from_slice(&frame);
    let (mut lo, mut hi) = ([f64::MAX; 2], [f64::MIN; 2]);
    for p in &all {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    let margin = 18.0;
    let sx = |p: [f64; 2]| (margin + opts.scale * (p[0] - lo[0]), margin + opts.scale * (hi[1] - p[1]));
    let width = 2.0 * margin + opts.scale * (hi[0] - lo[0]);
    let height = 2.0 * margin + opts.scale * (hi[1] - lo[1]);

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width:.0}\" height=\"{height:.0}\" viewBox=\"0 0 {width:.0} {height:.0}\">"
    );
    for w in &layout.warnings {
        let _ = writeln!(out, "<!-- warning: {} -->", w.replace("--", "- -"));
    }
    if !frame.is_empty() {
        let mut dpath = String::new();
        for (i, &p) in frame.iter().enumerate() {
            let (x, y) = sx(p);
            let _ = write!(dpath, "{}{x:.2} {y:.2} ", if i == 0 { "M " } else { "L " });
        }
        dpath.push('Z');
        let _ = writeln!(
            out,
            "<path d=\"{dpath}\" fill=\"none\" stroke=\"#999999\" stroke-width=\"1\" stroke-dasharray=\"6 4\"/>"
        );
    }
    for e in &layout.edges {
        let pts: Vec<String> = e
            .points
            .iter()
            .map(|&p| {
                let (x, y) = sx(p);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(
            out,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1.6\"/>",
            pts.join(" ")
        );
    }
    for v in &layout.nodes {
        let (x, y) = sx(v.pos);
        let style = match v.color {
            NodeColor::Black => "fill=\"#000000\"",
            NodeColor::White => "fill=\"#ffffff\" stroke=\"#000000\" stroke-width=\"1.6\"",
        };
        let _ = writeln!(out, "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"4.4\" {style}/>");
    }
    out.push_str("</svg>\n");
    out
}
