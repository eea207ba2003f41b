use rand::seq::SliceRandom;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{classify_case, CaseThresholds, MoveReport};
use crate::decomposition::Decomposition;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Classify `pi` and apply the matching move; `seed` drives case 3.
pub fn apply_case(g: &Graph, pi: &Decomposition, seed: u64) -> Result<MoveReport> {
    let case = classify_case(g, pi)?;
    apply_with(g, pi, case, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn guarded(g: &Graph, pi: &Decomposition, want: &[usize]) -> Result<usize> {
    let case = classify_case(g, pi)?;
    if !want.contains(&case) {
        return Err(Error::input(format!(
            "partition falls in case {case}, not case {}",
            want.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("/")
        )));
    }
    Ok(case)
}

/// Keep one vertex `x_i` of each `A_i` (`i ≥ 2`) and move the rest into `A₁`.
pub fn apply_case1(g: &Graph, pi: &Decomposition) -> Result<MoveReport> {
    guarded(g, pi, &[1])?;
    merge_excess(g, pi, 1)
}

/// Move a singleton `x` into `S` and split two vertices off a larger block.
pub fn apply_case2(g: &Graph, pi: &Decomposition) -> Result<MoveReport> {
    guarded(g, pi, &[2])?;
    promote_singleton(g, pi)
}

/// Send a random half of `A₁` to `S` and dissolve the rest into singletons.
pub fn apply_case3(g: &Graph, pi: &Decomposition, seed: u64) -> Result<MoveReport> {
    guarded(g, pi, &[3])?;
    split_first(g, pi, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Same move as case 1.
pub fn apply_case4(g: &Graph, pi: &Decomposition) -> Result<MoveReport> {
    guarded(g, pi, &[4])?;
    merge_excess(g, pi, 4)
}

/// Move `y` vertices of `B` into `A₁`; everything else in `B` becomes a
/// singleton.
pub fn apply_case5(g: &Graph, pi: &Decomposition) -> Result<MoveReport> {
    guarded(g, pi, &[5])?;
    absorb_excess(g, pi)
}

/// `A₁′ = A₁ ∪ S ∪ M` with `|M| = s`.
pub fn apply_case6(g: &Graph, pi: &Decomposition) -> Result<MoveReport> {
    guarded(g, pi, &[6])?;
    dissolve_s(g, pi, 6)
}

/// Same move as case 6; the result has the first canonical shape.
pub fn apply_case7(g: &Graph, pi: &Decomposition) -> Result<MoveReport> {
    guarded(g, pi, &[7])?;
    dissolve_s(g, pi, 7)
}

pub(super) fn apply_with(
    g: &Graph,
    pi: &Decomposition,
    case: usize,
    rng: &mut impl RngCore,
) -> Result<MoveReport> {
    match case {
        1 | 4 => merge_excess(g, pi, case),
        2 => promote_singleton(g, pi),
        3 => split_first(g, pi, rng),
        5 => absorb_excess(g, pi),
        6 | 7 => dissolve_s(g, pi, case),
        _ => Err(Error::input(format!("no case {case}"))),
    }
}

/// Neighbours of `v` lying in block `i`.
fn deg_in_block(g: &Graph, pi: &Decomposition, v: usize, i: usize) -> usize {
    g.neighbors(v)
        .iter()
        .filter(|&&u| pi.block_of(u as usize) == Some(i))
        .count()
}

/// Vertices of `B` ordered by degree into `A₁`, highest first, ties by label.
fn b_by_degree_into_a1(g: &Graph, pi: &Decomposition) -> Vec<usize> {
    let mut b: Vec<(usize, usize)> = pi
        .blocks()
        .iter()
        .skip(1)
        .flatten()
        .map(|&v| (deg_in_block(g, pi, v, 0), v))
        .collect();
    b.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
    b.into_iter().map(|(_, v)| v).collect()
}

fn finish(
    g: &Graph,
    before: &Decomposition,
    s: Vec<usize>,
    blocks: Vec<Vec<usize>>,
    case_id: usize,
    mut moved_set: Vec<usize>,
    choice: &str,
) -> Result<MoveReport> {
    let after = Decomposition::new(before.n(), s, blocks)?;
    if after.stats().r != before.stats().r {
        return Err(Error::structural(format!(
            "case {case_id} changed r from {} to {}",
            before.stats().r,
            after.stats().r
        )));
    }
    let (mut size_before, mut removed, mut added) = (0, 0, 0);
    for (u, v) in g.edges() {
        let (kb, ka) = (before.keeps(u, v), after.keeps(u, v));
        size_before += kb as usize;
        removed += (kb && !ka) as usize;
        added += (ka && !kb) as usize;
    }
    moved_set.sort_unstable();
    Ok(MoveReport {
        case_id,
        pi_before: before.clone(),
        size_after: size_before - removed + added,
        size_before,
        removed,
        added,
        moved_set,
        choice: choice.to_string(),
        thresholds: CaseThresholds::new(before.n()),
        pi_after: after,
    })
}

fn merge_excess(g: &Graph, pi: &Decomposition, case_id: usize) -> Result<MoveReport> {
    let blocks = pi.blocks();
    if pi.stats().y == 0 {
        return Err(Error::structural("every block after the first is a singleton"));
    }
    let mut a1 = blocks[0].clone();
    let mut rest = Vec::with_capacity(blocks.len() - 1);
    let mut moved = Vec::new();
    for (i, b) in blocks.iter().enumerate().skip(1) {
        let x = *b
            .iter()
            .min_by_key(|&&v| (deg_in_block(g, pi, v, i), v))
            .expect("blocks are non-empty");
        rest.push(vec![x]);
        for &v in b.iter().filter(|&&v| v != x) {
            a1.push(v);
            moved.push(v);
        }
    }
    let mut out = vec![a1];
    out.extend(rest);
    finish(
        g,
        pi,
        pi.s_members().to_vec(),
        out,
        case_id,
        moved,
        "x_i minimizes the degree inside A_i",
    )
}

fn promote_singleton(g: &Graph, pi: &Decomposition) -> Result<MoveReport> {
    let blocks = pi.blocks();
    let x = blocks
        .iter()
        .filter(|b| b.len() == 1)
        .map(|b| b[0])
        .max_by_key(|&v| {
            let outside_s = g
                .neighbors(v)
                .iter()
                .filter(|&&u| pi.block_of(u as usize).is_some())
                .count();
            (outside_s, std::cmp::Reverse(v))
        })
        .ok_or_else(|| Error::structural("no singleton block"))?;

    // For each non-singleton block, its two vertices of least inner degree.
    let mut pick: Option<(usize, usize, usize, usize)> = None;
    for (j, b) in blocks.iter().enumerate().filter(|(_, b)| b.len() > 1) {
        let mut degs: Vec<(usize, usize)> =
            b.iter().map(|&v| (deg_in_block(g, pi, v, j), v)).collect();
        degs.sort_unstable();
        let cost = degs[0].0 + degs[1].0;
        if pick.map_or(true, |p| cost < p.0) {
            pick = Some((cost, j, degs[0].1, degs[1].1));
        }
    }
    let (_, j, v, z) = pick.ok_or_else(|| Error::structural("no non-singleton block"))?;

    let mut s = pi.s_members().to_vec();
    s.push(x);
    let mut out = Vec::with_capacity(blocks.len() + 1);
    for (i, b) in blocks.iter().enumerate() {
        if b.len() == 1 && b[0] == x {
            continue;
        }
        if i == j {
            out.push(b.iter().copied().filter(|&w| w != v && w != z).collect());
        } else {
            out.push(b.clone());
        }
    }
    out.push(vec![v]);
    out.push(vec![z]);
    finish(
        g,
        pi,
        s,
        out,
        2,
        vec![x, v, z],
        "x maximizes the degree into the blocks; v, z minimize the degree inside A_j",
    )
}

fn split_first(g: &Graph, pi: &Decomposition, rng: &mut impl RngCore) -> Result<MoveReport> {
    let blocks = pi.blocks();
    let mut a1 = blocks[0].clone();
    a1.shuffle(rng);
    let half = a1.len() / 2;
    let (to_s, dissolved) = a1.split_at(half);
    let mut s = pi.s_members().to_vec();
    s.extend_from_slice(to_s);
    let mut out: Vec<Vec<usize>> = blocks[1..].to_vec();
    out.extend(dissolved.iter().map(|&v| vec![v]));
    finish(
        g,
        pi,
        s,
        out,
        3,
        to_s.to_vec(),
        "uniformly random split of A_1",
    )
}

fn absorb_excess(g: &Graph, pi: &Decomposition) -> Result<MoveReport> {
    let y = pi.stats().y;
    if y <= 0 {
        return Err(Error::structural("y = 0, nothing to absorb"));
    }
    let order = b_by_degree_into_a1(g, pi);
    let (m, rest) = order.split_at(y as usize);
    let mut a1 = pi.blocks()[0].clone();
    a1.extend_from_slice(m);
    let mut out = vec![a1];
    out.extend(rest.iter().map(|&v| vec![v]));
    finish(
        g,
        pi,
        pi.s_members().to_vec(),
        out,
        5,
        m.to_vec(),
        "M is the y vertices of B with most neighbours in A_1",
    )
}

fn dissolve_s(g: &Graph, pi: &Decomposition, case_id: usize) -> Result<MoveReport> {
    let st = pi.stats();
    if st.s > st.b {
        return Err(Error::structural(format!("s = {} exceeds |B| = {}", st.s, st.b)));
    }
    let order = b_by_degree_into_a1(g, pi);
    let (m, rest) = order.split_at(st.s);
    let mut a1 = pi.blocks()[0].clone();
    a1.extend_from_slice(pi.s_members());
    a1.extend_from_slice(m);
    let mut out = vec![a1];
    out.extend(rest.iter().map(|&v| vec![v]));
    finish(
        g,
        pi,
        Vec::new(),
        out,
        case_id,
        m.to_vec(),
        "M is the s vertices of B with most neighbours in A_1",
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::size;
    use crate::graph::named::*;
    use crate::graph::{edges_between, edges_within, VertexSet};

    fn pi(n: usize, s: &[usize], blocks: &[&[usize]]) -> Decomposition {
        Decomposition::new(n, s.to_vec(), blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    fn set(n: usize, m: &[usize]) -> VertexSet {
        VertexSet::from_members(n, m).unwrap()
    }

    #[test]
    fn case1_move_on_twelve_vertices() {
        // Two triangles as blocks next to a path block; at n = 12 the
        // classifier says case 3 or 4, so the move is applied directly.
        let mut e = vec![(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)];
        e.extend([(6, 7), (7, 8), (8, 9), (9, 10), (0, 6), (3, 6), (2, 11)]);
        let g = Graph::from_edges(12, &e).unwrap();
        let p = pi(12, &[11], &[&[6, 7, 8, 9, 10], &[0, 1, 2], &[3, 4, 5]]);
        let r = merge_excess(&g, &p, 1).unwrap();
        assert_eq!(r.pi_after.stats().r, p.stats().r);
        assert!(r.pi_after.blocks().iter().all(|b| b.len() % 2 == 1));
        // Each triangle keeps one vertex with inner degree 2.
        assert_eq!(r.removed, 4);
        assert!(r.removed as i64 <= p.stats().y);
        assert_eq!(r.size_after, size(&g, &r.pi_after).unwrap());
        assert_eq!(r.size_before, size(&g, &p).unwrap());
        assert_eq!(r.moved_set.len(), 4);
    }

    #[test]
    fn case1_needs_excess() {
        let g = complete(5);
        let p = pi(5, &[0], &[&[1, 2, 3], &[4]]);
        assert!(matches!(merge_excess(&g, &p, 1), Err(Error::Structural(_))));
        assert!(apply_case1(&g, &p).is_err());
    }

    #[test]
    fn case2_counts_match_direct_evaluation() {
        // Five singletons forming a clique, a path on three vertices as a
        // block, a larger first block, and one vertex in S.
        let mut e: Vec<(usize, usize)> = Vec::new();
        for u in 0..5 {
            for v in u + 1..5 {
                e.push((u, v));
            }
        }
        e.extend([(5, 6), (6, 7), (8, 9), (9, 10), (10, 11), (8, 11), (11, 0)]);
        let g = Graph::from_edges(12, &e).unwrap();
        let p = pi(12, &[8], &[&[9, 10, 11], &[5, 6, 7], &[0], &[1], &[2], &[3], &[4]]);
        let r = promote_singleton(&g, &p).unwrap();
        assert_eq!(r.pi_after.stats().r, p.stats().r);
        // x = 0: four clique neighbours plus 11 inside a block.
        assert_eq!(r.moved_set[0], 0);
        assert_eq!(r.added, 5);
        let n = 12;
        let h: usize = size(&g, &p).unwrap();
        let h2: usize = size(&g, &r.pi_after).unwrap();
        assert_eq!(h2 + r.removed, h + r.added);
        let (v, z) = (r.moved_set[1], r.moved_set[2]);
        assert!(edges_between(&g, &set(n, &[v, z]), &set(n, &[9, 10, 11])).is_ok());
    }

    #[test]
    fn case2_needs_a_singleton_and_a_big_block() {
        let g = complete(6);
        let p = pi(6, &[], &[&[0, 1, 2], &[3, 4, 5]]);
        assert!(matches!(promote_singleton(&g, &p), Err(Error::Structural(_))));
        let p = pi(6, &[5], &[&[0], &[1], &[2], &[3], &[4]]);
        assert!(promote_singleton(&g, &p).is_err());
    }

    #[test]
    fn case3_on_k9() {
        let g = complete(9);
        let p = pi(9, &[], &[&[0, 1, 2, 3, 4], &[5, 6, 7], &[8]]);
        let r = split_first(&g, &p, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        let st = r.pi_after.stats();
        assert_eq!((st.s, st.r), (2, p.stats().r));
        let half = set(9, &r.moved_set);
        let dissolved: Vec<usize> =
            (0..5).filter(|v| !half.contains(*v)).collect();
        assert_eq!(r.removed, edges_within(&g, &set(9, &dissolved)).unwrap());
        assert_eq!(r.added, edges_between(&g, &half, &set(9, &[5, 6, 7, 8])).unwrap());
    }

    #[test]
    fn case5_absorbs_the_best_pair() {
        let n = 12;
        let mut e: Vec<(usize, usize)> = Vec::new();
        for u in 0..7 {
            for v in u + 1..7 {
                e.push((u, v));
            }
        }
        e.extend([(7, 0), (7, 1), (8, 0), (9, 2), (9, 3), (9, 4), (7, 8)]);
        let g = Graph::from_edges(n, &e).unwrap();
        let p = pi(n, &[11], &[&[0, 1, 2, 3, 4, 5, 6], &[7, 8, 9], &[10]]);
        assert_eq!(p.stats().y, 2);
        let r = absorb_excess(&g, &p).unwrap();
        assert_eq!(r.moved_set, vec![7, 9]);
        assert_eq!(r.pi_after.stats().d, p.stats().d);
        assert_eq!(r.pi_after.stats().r, p.stats().r);
    }

    #[test]
    fn case6_parity() {
        let n = 12;
        let g = complete(n);
        let p = pi(n, &[0], &[&[1, 2, 3, 4, 5, 6, 7], &[8], &[9], &[10], &[11]]);
        let r = dissolve_s(&g, &p, 6).unwrap();
        assert_eq!(r.pi_after.blocks()[0].len(), 9);
        assert!(r.pi_after.is_form_a());
        assert_eq!(r.pi_after.stats().r, p.stats().r);
        // s = 0 means form (a) already.
        let canon = pi(n, &[], &[&[0, 1, 2, 3, 4, 5, 6, 7, 8], &[9], &[10], &[11]]);
        assert!(apply_case6(&g, &canon).is_err());
    }

    #[test]
    fn dissolving_needs_enough_of_b() {
        let g = complete(7);
        let p = pi(7, &[0, 1], &[&[2, 3, 4], &[5], &[6]]);
        assert_eq!(p.stats().r, 1);
        assert!(dissolve_s(&g, &p, 7).is_ok());
        // d = s and y = 0 leaves |B| = s − 1.
        let g = complete(6);
        let p = pi(6, &[0, 1], &[&[2, 3, 4], &[5]]);
        assert!(matches!(dissolve_s(&g, &p, 7), Err(Error::Structural(_))));
    }
}
