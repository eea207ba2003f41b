use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Largest number of candidate sets scanned before falling back to local
/// search.
pub const FORM_ENUM_BUDGET: u128 = 2_000_000;

/// One of the two extremal shapes a subgraph can take.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Form {
    /// Every edge inside `W`, where `|W| = min(2k + 1, n)`.
    Form1(VertexSet),
    /// Every edge meeting `T`, where `|T| = k`.
    Form2(VertexSet),
}

impl Serialize for Form {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = ser.serialize_map(Some(1))?;
        match self {
            Form::Form1(w) => m.serialize_entry("form1", &w.to_vec())?,
            Form::Form2(t) => m.serialize_entry("form2", &t.to_vec())?,
        }
        m.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormChoice {
    #[serde(serialize_with = "crate::serde_util::set_as_list")]
    pub set: VertexSet,
    pub size: usize,
    /// False when the set came from local search rather than enumeration.
    pub exact: bool,
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        match acc.checked_mul((n - i) as u128) {
            Some(x) => acc = x / (i as u128 + 1),
            None => return u128::MAX,
        }
    }
    acc
}

/// Calls `f` on every `t`-subset of `0..n` in lexicographic order.
fn for_each_combination(n: usize, t: usize, mut f: impl FnMut(&[usize])) {
    if t > n {
        return;
    }
    let mut c: Vec<usize> = (0..t).collect();
    loop {
        f(&c);
        let Some(i) = (0..t).rev().find(|&i| c[i] != i + n - t) else {
            return;
        };
        c[i] += 1;
        for j in i + 1..t {
            c[j] = c[j - 1] + 1;
        }
    }
}

fn count_within(g: &Graph, set: &[usize], member: &VertexSet) -> usize {
    set.iter().map(|&v| g.degree_into(v, member)).sum::<usize>() / 2
}

/// A `(2k+1)`-set `W` maximizing `|E(W)|`; ties go to the lexicographically
/// first set.
pub fn best_form1(g: &Graph, k: usize) -> Result<FormChoice> {
    let n = g.n();
    let t = 2 * k + 1;
    if t > n {
        return Err(Error::input(format!("2k+1 = {t} exceeds n = {n}")));
    }
    if binomial(n, t) <= FORM_ENUM_BUDGET {
        let mut best: Option<(usize, Vec<usize>)> = None;
        let mut member = VertexSet::new(n);
        for_each_combination(n, t, |c| {
            member.clear();
            c.iter().for_each(|&v| {
                member.insert(v);
            });
            let e = count_within(g, c, &member);
            if best.as_ref().map_or(true, |(b, _)| e > *b) {
                best = Some((e, c.to_vec()));
            }
        });
        let (size, set) = best.expect("at least one subset");
        return Ok(FormChoice {
            set: VertexSet::from_iter_in(n, set),
            size,
            exact: true,
        });
    }
    Ok(local_search(g, t, Objective::Inside))
}

/// A `k`-set `T` maximizing the number of edges meeting it,
/// `Σ_{v∈T} d(v) − |E(T)|`.
pub fn best_form2(g: &Graph, k: usize) -> Result<FormChoice> {
    let n = g.n();
    if k > n {
        return Err(Error::input(format!("k = {k} exceeds n = {n}")));
    }
    if binomial(n, k) <= FORM_ENUM_BUDGET {
        let mut best: Option<(usize, Vec<usize>)> = None;
        let mut member = VertexSet::new(n);
        for_each_combination(n, k, |c| {
            member.clear();
            c.iter().for_each(|&v| {
                member.insert(v);
            });
            let deg: usize = c.iter().map(|&v| g.degree(v)).sum();
            let e = deg - count_within(g, c, &member);
            if best.as_ref().map_or(true, |(b, _)| e > *b) {
                best = Some((e, c.to_vec()));
            }
        });
        let (size, set) = best.expect("at least one subset");
        return Ok(FormChoice {
            set: VertexSet::from_iter_in(n, set),
            size,
            exact: true,
        });
    }
    Ok(local_search(g, k, Objective::Meeting))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Objective {
    Inside,
    Meeting,
}

/// Greedy construction followed by single swaps while they help.
///
/// For [`Objective::Inside`] a vertex is worth `d_W(v)`; for
/// [`Objective::Meeting`] it is worth `d(v) − d_W(v)`, the edges it would
/// newly cover.
fn local_search(g: &Graph, t: usize, obj: Objective) -> FormChoice {
    let n = g.n();
    let mut inside = vec![0usize; n];
    let mut chosen = VertexSet::new(n);
    let worth = |v: usize, inside: &[usize]| -> i64 {
        match obj {
            Objective::Inside => inside[v] as i64,
            Objective::Meeting => g.degree(v) as i64 - inside[v] as i64,
        }
    };
    let add = |v: usize, chosen: &mut VertexSet, inside: &mut [usize]| {
        chosen.insert(v);
        for &u in g.neighbors(v) {
            inside[u as usize] += 1;
        }
    };
    let drop = |v: usize, chosen: &mut VertexSet, inside: &mut [usize]| {
        chosen.remove(v);
        for &u in g.neighbors(v) {
            inside[u as usize] -= 1;
        }
    };

    for step in 0..t {
        let v = (0..n)
            .filter(|&v| !chosen.contains(v))
            .max_by_key(|&v| {
                let w = if step == 0 { g.degree(v) as i64 } else { worth(v, &inside) };
                (w, std::cmp::Reverse(v))
            })
            .expect("t <= n");
        add(v, &mut chosen, &mut inside);
    }

    for _ in 0..10 * n.max(1) {
        let best_out = (0..n)
            .filter(|&v| !chosen.contains(v))
            .max_by_key(|&v| (worth(v, &inside), std::cmp::Reverse(v)));
        let worst_in = chosen
            .iter()
            .min_by_key(|&v| (worth(v, &inside), v));
        let (Some(v), Some(u)) = (best_out, worst_in) else {
            break;
        };
        // Replacing u by v changes the objective by worth(v) - worth(u) minus
        // one if they are adjacent.
        let gain = worth(v, &inside) - worth(u, &inside) - g.has_edge(u, v) as i64;
        if gain <= 0 {
            break;
        }
        drop(u, &mut chosen, &mut inside);
        add(v, &mut chosen, &mut inside);
    }

    let members = chosen.to_vec();
    let within = members.iter().map(|&v| inside[v]).sum::<usize>() / 2;
    let size = match obj {
        Objective::Inside => within,
        Objective::Meeting => members.iter().map(|&v| g.degree(v)).sum::<usize>() - within,
    };
    FormChoice {
        set: chosen,
        size,
        exact: false,
    }
}
