use cubehom::graph::{complete, complete_bipartite, cycle, hypercube, path, random};
use cubehom::homcount::*;
use cubehom::reflectivity::{certify_reflective, enumerate_nice_triples, is_admissible, SearchOutcome, DEFAULT_BUDGET};
use cubehom::scalar::rational;
use cubehom::{Graph, Pattern, VertexSet};
use proptest::prelude::*;

/// Plain backtracking over all maps, with every vertex of `r` sent to the
/// same image and optionally all images distinct.
fn oracle(h: &Graph, g: &Graph, r: VertexSet, injective: bool) -> u128 {
    fn go(h: &Graph, g: &Graph, r: VertexSet, inj: bool, v: usize, f: &mut Vec<usize>) -> u128 {
        if v == h.n() {
            return 1;
        }
        let mut total = 0;
        for x in 0..g.n() {
            if inj && f.contains(&x) {
                continue;
            }
            if r.contains(v) && r.iter().any(|u| u < v && f[u] != x) {
                continue;
            }
            if h.neighbours(v).iter().any(|&u| u < v && !g.has_edge(f[u], x)) {
                continue;
            }
            f.push(x);
            total += go(h, g, r, inj, v + 1, f);
            f.pop();
        }
        total
    }
    go(h, g, r, injective, 0, &mut Vec::new())
}

/// All set partitions of `0..n` as block-index vectors.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, cur: &mut Vec<usize>, blocks: usize, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..=blocks {
            cur.push(b);
            go(i + 1, n, cur, blocks.max(b + 1), out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), 0, &mut out);
    out
}

/// `H/π`, or `None` if some block contains an edge.
fn contract(h: &Graph, blocks: &[usize]) -> Option<Graph> {
    let k = blocks.iter().max().map_or(0, |&b| b + 1);
    let mut edges = Vec::new();
    for (u, v) in h.edges() {
        if blocks[u] == blocks[v] {
            return None;
        }
        edges.push((blocks[u], blocks[v]));
    }
    Some(Graph::new(k, edges).unwrap())
}

fn mobius(blocks: &[usize]) -> i128 {
    let k = blocks.iter().max().map_or(0, |&b| b + 1);
    (0..k)
        .map(|b| {
            let s = blocks.iter().filter(|&&x| x == b).count() as i128;
            let fact: i128 = (1..s).product();
            if s % 2 == 1 { fact } else { -fact }
        })
        .product()
}

fn set(v: &[usize]) -> VertexSet {
    v.iter().copied().collect()
}

#[test]
fn q3_into_k44_matches_oracle() {
    let q3 = hypercube(3).unwrap();
    let k44 = complete_bipartite(4, 4);
    assert_eq!(oracle(&q3, &k44, VertexSet::EMPTY, false), 131072);
    assert_eq!(hom_count(&q3, &k44, None).unwrap(), 131072);
}

#[test]
fn injective_partition_oracles() {
    let q3 = hypercube(3).unwrap();
    let hosts = [complete(5), cycle(6).unwrap(), random(6, &rational(1, 2), 1).unwrap()];
    for g in &hosts {
        let mut mobius_sum = 0i128;
        let mut inj_sum = 0u128;
        for p in partitions(q3.n()) {
            if let Some(q) = contract(&q3, &p) {
                mobius_sum += mobius(&p) * hom_count(&q, g, None).unwrap() as i128;
                inj_sum += oracle(&q, g, VertexSet::EMPTY, true);
            }
        }
        let inj = injective_hom_count(&q3, g).unwrap();
        assert_eq!(inj as i128, mobius_sum);
        assert_eq!(inj, oracle(&q3, g, VertexSet::EMPTY, true));
        assert_eq!(hom_count(&q3, g, None).unwrap(), inj_sum);
    }
}

#[test]
fn complete_host_closed_form() {
    let q3 = hypercube(3).unwrap();
    for n in 8..=10u128 {
        let falling: u128 = (n - 7..=n).product();
        assert_eq!(injective_hom_count(&q3, &complete(n as usize)).unwrap(), falling);
    }
    assert_eq!(oracle(&q3, &complete(8), VertexSet::EMPTY, true), 40320);
}

#[test]
fn sidorenko_examples() {
    let q3 = hypercube(3).unwrap();
    assert!(sidorenko_check(&q3, &complete(8)).unwrap().holds);
    let g = random(12, &rational(1, 2), 7).unwrap();
    let c = sidorenko_check(&q3, &g).unwrap();
    assert!(c.holds);
    assert!(c.margin.unwrap() >= rational(1, 1));
    let edge = complete(2);
    for g in [path(5), cycle(7).unwrap(), random(9, &rational(1, 3), 2).unwrap()] {
        let c = sidorenko_check(&edge, &g).unwrap();
        assert_eq!(cubehom::scalar::rational_from_int(c.lhs as i64), c.rhs);
    }
}

#[test]
fn reflection_inequality_examples() {
    let p = Pattern::new(hypercube(3).unwrap()).unwrap();
    let triples = enumerate_nice_triples(&p).unwrap();
    let r = set(&[0b000, 0b011]);
    for g in [hypercube(3).unwrap(), complete(2), random(10, &rational(1, 2), 3).unwrap()] {
        for t in &triples {
            if is_admissible(&p, t, r).unwrap() {
                let c = check_reflection_inequality(&p, &g, t, r).unwrap();
                assert!(c.holds(), "{c:?}");
            }
        }
    }
    let t = &triples[0];
    let bad = set(&[0b000, 0b001]);
    assert!(check_reflection_inequality(&p, &complete(2), t, bad).is_err());
}

#[test]
fn final_inequality_examples() {
    let p = Pattern::new(hypercube(3).unwrap()).unwrap();
    let SearchOutcome::Certified(cert) = certify_reflective(&p, set(&[0, 3]), DEFAULT_BUDGET).unwrap() else {
        panic!("Q_3 is reflective");
    };
    for g in [hypercube(3).unwrap(), random(9, &rational(2, 3), 11).unwrap(), complete_bipartite(1, 1)] {
        assert!(check_final_inequality(&p, &g, &cert).unwrap().holds);
    }
    // No constrained homomorphisms at all.
    let empty = Graph::new(3, Vec::<(usize, usize)>::new()).unwrap();
    let c = check_final_inequality(&p, &empty, &cert).unwrap();
    assert_eq!(c.start, 0);
    assert!(c.holds);
    let mut broken = cert.clone();
    broken.side = VertexSet::EMPTY;
    assert!(check_final_inequality(&p, &empty, &broken).is_err());
}

#[test]
fn non_injective_accounting() {
    let q3 = hypercube(3).unwrap();
    for seed in 0..5 {
        let g = random(8, &rational(1, 2), seed).unwrap();
        let non_inj = hom_count(&q3, &g, None).unwrap() - injective_hom_count(&q3, &g).unwrap();
        let mut bound = 0;
        for u in 0..8 {
            for v in u + 1..8 {
                if !q3.has_edge(u, v) {
                    bound += hom_count(&q3, &g, Some(set(&[u, v]))).unwrap();
                }
            }
        }
        assert!(non_inj <= bound);
    }
}

#[test]
fn experiment_examples() {
    let zero = supersaturation_experiment(3, 40, &rational(0, 1), 5, 1).unwrap();
    let t = &zero.trials[0];
    assert_eq!((t.hom, t.injective, t.non_injective), (0, 0, 0));
    assert!(t.ratio.is_none());

    let full = supersaturation_experiment(3, 9, &rational(1, 1), 5, 1).unwrap();
    assert_eq!(full.trials[0].injective, (2..=9u128).product());

    let a = supersaturation_experiment(3, 16, &rational(1, 2), 9, 2).unwrap();
    let b = supersaturation_experiment(3, 16, &rational(1, 2), 9, 2).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    assert!(supersaturation_experiment(4, 16, &rational(1, 2), 9, 1).is_err());
    assert!(supersaturation_experiment(3, 49, &rational(1, 2), 9, 1).is_err());
}

fn bipartite_pattern(left: usize, right: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    for i in 0..left {
        for j in 0..right {
            if mask >> (i * right + j) & 1 == 1 {
                edges.push((i, left + j));
            }
        }
    }
    Graph::new(left + right, edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn quotient_matches_direct_constraint(
        left in 1usize..4, right in 1usize..5, mask in any::<u64>(),
        n in 2usize..9, seed in any::<u64>(), rmask in any::<u8>(),
    ) {
        let h = bipartite_pattern(left, right, mask);
        let g = random(n, &rational(1, 2), seed).unwrap();
        let r: VertexSet = (0..left).filter(|i| rmask >> i & 1 == 1).collect();
        prop_assert_eq!(hom_count(&h, &g, Some(r)).unwrap(), oracle(&h, &g, r, false));
        prop_assert_eq!(injective_hom_count(&h, &g).unwrap(), oracle(&h, &g, VertexSet::EMPTY, true));
    }

    #[test]
    fn general_path_matches_oracle(n in 3usize..8, seed in any::<u64>(), k in 3usize..6) {
        let h = cycle(k).unwrap();
        let g = random(n, &rational(2, 3), seed).unwrap();
        prop_assert_eq!(hom_count(&h, &g, None).unwrap(), oracle(&h, &g, VertexSet::EMPTY, false));
        prop_assert_eq!(injective_hom_count(&h, &g).unwrap(), oracle(&h, &g, VertexSet::EMPTY, true));
    }

    #[test]
    fn larger_constraint_counts_fewer(n in 3usize..9, seed in any::<u64>(), a in any::<u8>(), b in any::<u8>()) {
        let q3 = hypercube(3).unwrap();
        let even = [0usize, 3, 5, 6];
        let r: VertexSet = even.iter().enumerate().filter(|(i, _)| a >> i & 1 == 1).map(|(_, &v)| v).collect();
        let extra: VertexSet = even.iter().enumerate().filter(|(i, _)| b >> i & 1 == 1).map(|(_, &v)| v).collect();
        let bigger = r.union(extra);
        let g = random(n, &rational(1, 2), seed).unwrap();
        prop_assert!(hom_count(&q3, &g, Some(r)).unwrap() >= hom_count(&q3, &g, Some(bigger)).unwrap());
    }
}
