use std::collections::HashMap;

use crate::automorphism::Automorphism;
use crate::error::{capability, input, Error, Result};
use crate::graph::{binomial, hypercube, set_graph, VertexLabel};
use crate::pattern::Pattern;
use crate::vertex_set::{VertexSet, MAX_PATTERN_VERTICES};

use super::certificate::{verify_certificate, CertificateStep, ReflectivityCertificate};
use super::triple::{psi_apply, NiceTriple};

fn internal<T>(msg: String) -> Result<T> {
    Err(Error::Internal(msg))
}

/// Hypercube coordinate helpers; coordinate `i` (1-based) is bit `d - i`.
struct Cube {
    d: u32,
    pattern: Pattern,
}

impl Cube {
    fn new(d: u32) -> Result<Self> {
        Ok(Cube {
            d,
            pattern: Pattern::new(hypercube(d)?)?,
        })
    }

    fn n(&self) -> usize {
        1 << self.d
    }

    fn bit(&self, i: u32) -> usize {
        1 << (self.d - i)
    }

    fn coord(&self, x: usize, i: u32) -> usize {
        (x >> (self.d - i)) & 1
    }

    fn set_where(&self, pred: impl Fn(usize) -> bool) -> VertexSet {
        (0..self.n()).filter(|&x| pred(x)).collect()
    }

    fn automorphism(&self, f: impl Fn(usize) -> usize) -> Result<Automorphism> {
        Automorphism::new(self.pattern.graph(), (0..self.n()).map(f).collect())
    }

    fn with_coords(&self, x: usize, i: u32, xi: usize, j: u32, xj: usize) -> usize {
        let cleared = x & !(self.bit(i) | self.bit(j));
        cleared | (xi * self.bit(i)) | (xj * self.bit(j))
    }

    fn swap(&self, i: u32, j: u32) -> Result<Automorphism> {
        self.automorphism(|x| self.with_coords(x, i, self.coord(x, j), j, self.coord(x, i)))
    }

    /// `x_i ↦ 1 - x_j`, `x_j ↦ 1 - x_i`.
    fn complement_swap(&self, i: u32, j: u32) -> Result<Automorphism> {
        self.automorphism(|x| {
            self.with_coords(x, i, 1 - self.coord(x, j), j, 1 - self.coord(x, i))
        })
    }

    /// `{x : x_i = vi, x_j = vj}`.
    fn face(&self, i: u32, vi: usize, j: u32, vj: usize) -> VertexSet {
        self.set_where(|x| self.coord(x, i) == vi && self.coord(x, j) == vj)
    }

    fn even(&self, x: usize) -> bool {
        x.count_ones().is_multiple_of(2)
    }
}

/// `S_k`: even vertices with every coordinate after the `k`-th equal to zero.
pub fn hypercube_s_set(d: u32, k: u32) -> Result<VertexSet> {
    let c = Cube::new(d)?;
    Ok(c.set_where(|x| c.even(x) && (k + 1..=d).all(|i| c.coord(x, i) == 0)))
}

/// `T_k`: even vertices vanishing after coordinate `k + 1` with
/// `(x_k, x_{k+1}) ≠ (1, 1)`.
pub fn hypercube_t_set(d: u32, k: u32) -> Result<VertexSet> {
    let c = Cube::new(d)?;
    Ok(c.set_where(|x| {
        c.even(x)
            && (k + 2..=d).all(|i| c.coord(x, i) == 0)
            && !(c.coord(x, k) == 1 && c.coord(x, k + 1) == 1)
    }))
}

/// The swap triple carrying `S_k` to `T_k` and the complement-swap triple
/// carrying `T_k` to `S_{k+1}`.
pub fn hypercube_claim_triples(d: u32, k: u32) -> Result<(NiceTriple, NiceTriple)> {
    let c = Cube::new(d)?;
    claim_triples(&c, k)
}

fn claim_triples(c: &Cube, k: u32) -> Result<(NiceTriple, NiceTriple)> {
    let swap = NiceTriple::new(&c.pattern, c.face(k, 1, k + 1, 0), c.face(k, 0, k + 1, 1), c.swap(k, k + 1)?)?;
    let cswap = NiceTriple::new(
        &c.pattern,
        c.face(k, 0, k + 1, 0),
        c.face(k, 1, k + 1, 1),
        c.complement_swap(k, k + 1)?,
    )?;
    Ok((swap, cswap))
}

/// The explicit reflection sequence for `Q_d` from a pair in one parity
/// class: a normalization step giving two vertices at distance two, then the
/// alternating chain `S_k → T_k → S_{k+1}` for `k = 2..d-1`, transported back
/// through the cube symmetry that brings the pair to `{0…0, 110…0}`.
pub fn hypercube_paper_sequence(d: u32, r0: VertexSet) -> Result<ReflectivityCertificate> {
    if !(3..=6).contains(&d) {
        return input(format!("hypercube sequence needs 3 <= d <= 6 (got {d})"));
    }
    let c = Cube::new(d)?;
    let v: Vec<usize> = r0.to_vec();
    if v.len() != 2 || v.iter().any(|&x| x >= c.n()) {
        return input(format!("start set {r0} must be two vertices of Q_{d}"));
    }
    let (u, w) = (v[0], v[1]);
    if c.even(u) != c.even(w) {
        return input(format!("start set {r0} mixes the parity classes"));
    }
    let side = c.set_where(|x| c.even(x) == c.even(u));
    let mut steps = Vec::new();

    // Normalization, in the frame where u is the origin.
    let sigma0 = c.automorphism(|x| x ^ u)?;
    let vp = u ^ w;
    let (triple, r1_frame) = if vp == c.n() - 1 {
        let t = NiceTriple::new(&c.pattern, c.face(1, 0, 2, 0), c.face(1, 1, 2, 1), c.complement_swap(1, 2)?)?;
        let r1 = [0, t.phi().apply(0)].into_iter().collect::<VertexSet>();
        (t, r1)
    } else {
        let j = (2..=d)
            .find(|&j| c.coord(vp, j) != c.coord(vp, 1))
            .expect("a non-antipodal pair has two differing coordinates");
        let (vi, vj) = (c.coord(vp, 1), c.coord(vp, j));
        let t = NiceTriple::new(&c.pattern, c.face(1, vi, j, vj), c.face(1, vj, j, vi), c.swap(1, j)?)?;
        let r1 = [vp, t.phi().apply(vp)].into_iter().collect::<VertexSet>();
        (t, r1)
    };
    let r0_frame = sigma0.map_set(r0);
    let image = psi_apply(&c.pattern, &triple, r0_frame)?;
    if !r1_frame.is_subset(image) {
        return internal(format!("normalization image {image} misses {r1_frame}"));
    }
    let r1 = sigma0.map_set(r1_frame);
    steps.push(CertificateStep::new(&triple.conjugate(&sigma0), r1));

    // Relabel so that R_1 = {0…0, 110…0}.
    let pair = r1.to_vec();
    let (a, diff) = (pair[0], pair[0] ^ pair[1]);
    let moved: Vec<u32> = (1..=d).filter(|&i| c.coord(diff, i) == 1).collect();
    if moved.len() != 2 {
        return internal(format!("normalized pair {r1} is not at distance two"));
    }
    let order: Vec<u32> = moved
        .iter()
        .copied()
        .chain((1..=d).filter(|i| !moved.contains(i)))
        .collect();
    // New coordinate p takes the value of old coordinate order[p-1].
    let sigma1 = c.automorphism(|x| {
        let y = x ^ a;
        (1..=d).fold(0, |acc, p| acc | (c.coord(y, order[p as usize - 1]) * c.bit(p)))
    })?;
    let back = sigma1.inverse();

    let mut current = hypercube_s_set(d, 2)?;
    if back.map_set(current) != r1 {
        return internal("relabelling does not send S_2 to R_1".into());
    }
    for k in 2..d {
        let (swap, cswap) = claim_triples(&c, k)?;
        let t_k = psi_apply(&c.pattern, &swap, current)?;
        if t_k != hypercube_t_set(d, k)? {
            return internal(format!("psi(S_{k}) != T_{k} in Q_{d}"));
        }
        steps.push(CertificateStep::new(&swap.conjugate(&back), back.map_set(t_k)));
        let s_next = psi_apply(&c.pattern, &cswap, t_k)?;
        if s_next != hypercube_s_set(d, k + 1)? {
            return internal(format!("psi(T_{k}) != S_{} in Q_{d}", k + 1));
        }
        steps.push(CertificateStep::new(&cswap.conjugate(&back), back.map_set(s_next)));
        current = s_next;
    }
    let cert = ReflectivityCertificate {
        start: r0,
        side,
        steps,
    };
    ensure_valid(&c.pattern, &cert)?;
    Ok(cert)
}

fn ensure_valid(pattern: &Pattern, cert: &ReflectivityCertificate) -> Result<()> {
    match verify_certificate(pattern, cert)? {
        super::certificate::CertificateCheck::Valid { .. } => Ok(()),
        super::certificate::CertificateCheck::Invalid { step, reason } => {
            internal(format!("constructed certificate fails at {step:?}: {reason}"))
        }
    }
}

/// The set graph with lookups between vertices and element masks
/// (bit `e` stands for element `e + 1`).
struct SetGraph {
    l: u32,
    k: u32,
    pattern: Pattern,
    masks: Vec<u64>,
    index: HashMap<u64, usize>,
}

impl SetGraph {
    fn new(l: u32, k: u32) -> Result<Self> {
        let graph = set_graph(l, k)?;
        if graph.n() > MAX_PATTERN_VERTICES {
            return capability(format!(
                "H_({l},{k}) has {} vertices; the limit is {MAX_PATTERN_VERTICES}",
                graph.n()
            ));
        }
        let masks: Vec<u64> = graph
            .labels()
            .expect("set graphs are labelled")
            .iter()
            .map(|lab| match lab {
                VertexLabel::Subset(m) => *m,
                VertexLabel::Bits { value, .. } => *value,
            })
            .collect();
        let index = masks.iter().enumerate().map(|(v, &m)| (m, v)).collect();
        Ok(SetGraph {
            l,
            k,
            pattern: Pattern::new(graph)?,
            masks,
            index,
        })
    }

    fn small_side(&self) -> VertexSet {
        VertexSet::full(binomial(self.k as u64, self.l as u64) as usize)
    }

    fn set_where(&self, pred: impl Fn(u64) -> bool) -> VertexSet {
        (0..self.masks.len()).filter(|&v| pred(self.masks[v])).collect()
    }

    fn vertex_map(&self, f: impl Fn(u64) -> u64) -> Result<Automorphism> {
        let perm = self.masks.iter().map(|&m| self.index[&f(m)]).collect();
        Automorphism::new(self.pattern.graph(), perm)
    }

    /// Automorphism induced by a permutation of the ground set (0-based).
    fn relabel(&self, elem: &[u32]) -> Result<Automorphism> {
        self.vertex_map(|m| {
            (0..self.k)
                .filter(|&e| m >> e & 1 == 1)
                .fold(0, |acc, e| acc | 1 << elem[e as usize])
        })
    }

    /// `(C_{i,j}, D_{i,j}, φ_{i,j})` for elements `i ≠ j` (1-based).
    fn swap_triple(&self, i: u32, j: u32) -> Result<NiceTriple> {
        let (bi, bj) = (1u64 << (i - 1), 1u64 << (j - 1));
        let c = self.set_where(|m| m & bi != 0 && m & bj == 0);
        let d = self.set_where(|m| m & bi == 0 && m & bj != 0);
        let phi = self.vertex_map(|m| {
            if (m & bi != 0) != (m & bj != 0) {
                m ^ bi ^ bj
            } else {
                m
            }
        })?;
        NiceTriple::new(&self.pattern, c, d, phi)
    }
}

/// The explicit reflection sequence for the set graph `H_{l,k}` from a pair
/// on one side: one step producing two sets that differ in a single
/// element, then the schedule `φ_{l,l+1}, …, φ_{l,k}, φ_{l-1,l}, …, φ_{1,k}`.
/// Pairs on the `(k-l)`-side are handled through complementation.
pub fn set_graph_paper_sequence(l: u32, k: u32, r0: VertexSet) -> Result<ReflectivityCertificate> {
    let sg = SetGraph::new(l, k)?;
    let small = sg.small_side();
    if r0.len() != 2 || !r0.is_subset(sg.pattern.vertices()) {
        return input(format!("start set {r0} must be two vertices of H_({l},{k})"));
    }
    if r0.is_subset(small) {
        let cert = small_side_sequence(&sg, r0)?;
        ensure_valid(&sg.pattern, &cert)?;
        return Ok(cert);
    }
    let large = sg.pattern.vertices().difference(small);
    if !r0.is_subset(large) {
        return input(format!("start set {r0} meets both parts"));
    }
    let full = (1u64 << k) - 1;
    let comp = sg.vertex_map(|m| full ^ m)?;
    let cert = small_side_sequence(&sg, comp.map_set(r0))?.transport(comp.perm());
    ensure_valid(&sg.pattern, &cert)?;
    Ok(cert)
}

fn small_side_sequence(sg: &SetGraph, r0: VertexSet) -> Result<ReflectivityCertificate> {
    let (l, k) = (sg.l, sg.k);
    let pair = r0.to_vec();
    let (s, t) = (sg.masks[pair[0]], sg.masks[pair[1]]);
    let elem = |m: u64| m.trailing_zeros() + 1;
    let full = (1u64 << k) - 1;
    let i = elem(s & !t);
    let j = elem(full & !(s | t));
    let norm = sg.swap_triple(i, j)?;
    let image = psi_apply(&sg.pattern, &norm, r0)?;
    let s_img = norm.phi().apply(pair[0]);
    let r1: VertexSet = [pair[0], s_img].into_iter().collect();
    if !r1.is_subset(image) {
        return internal(format!("normalization image {image} misses {r1}"));
    }
    let mut steps = vec![CertificateStep::new(&norm, r1)];

    // Ground-set relabelling: common part → 1..l-1, S\φ(S) → l, φ(S)\S → l+1.
    let (sm, pm) = (sg.masks[pair[0]], sg.masks[s_img]);
    let mut order: Vec<u32> = (0..k).filter(|&e| (sm & pm) >> e & 1 == 1).collect();
    order.extend((0..k).filter(|&e| (sm & !pm) >> e & 1 == 1));
    order.extend((0..k).filter(|&e| (pm & !sm) >> e & 1 == 1));
    order.extend((0..k).filter(|&e| (sm | pm) >> e & 1 == 0));
    let mut to_frame = vec![0u32; k as usize];
    for (new, &old) in order.iter().enumerate() {
        to_frame[old as usize] = new as u32;
    }
    let back = sg.relabel(&to_frame)?.inverse();

    let first_l = (1u64 << l) - 1;
    let frame_start: VertexSet = [sg.index[&first_l], sg.index[&(first_l ^ (1 << (l - 1)) ^ (1 << l))]]
        .into_iter()
        .collect();
    if back.map_set(frame_start) != r1 {
        return internal("relabelling does not send the frame pair to R_1".into());
    }
    let small = sg.small_side();
    let mut current = frame_start;
    for i in (1..=l).rev() {
        for j in i + 1..=k {
            let t = sg.swap_triple(i, j)?;
            current = psi_apply(&sg.pattern, &t, current)?;
            let prefix = (1u64 << (i - 1)) - 1;
            let window = ((1u64 << j) - 1) & !prefix;
            let claimed = sg.set_where(|m| m & prefix == prefix && m & window != 0).intersection(small);
            if !claimed.is_subset(current) {
                return internal(format!("claim fails after φ_({i},{j}) in H_({l},{k})"));
            }
            steps.push(CertificateStep::new(&t.conjugate(&back), back.map_set(current)));
        }
    }
    if current != small {
        return internal(format!("schedule ends at {current}, not the whole side"));
    }
    Ok(ReflectivityCertificate {
        start: r0,
        side: small,
        steps,
    })
}
