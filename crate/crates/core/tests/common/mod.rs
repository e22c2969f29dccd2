#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use seqalloc::engine::{enumerate_policies, execute_policy};
use seqalloc::{Assignment, Instance, ItemId, Policy, PolicyClass};

pub const EX1: &str = "agents: a1 a2\nitems: b c d e\npref a1: b c d e\npref a2: b d c e\n";

/// Instance with agents `a1..` and items `i1..`, preference orders given as
/// item indices.
pub fn instance(orders: Vec<Vec<ItemId>>, m: usize) -> Instance {
    let agents = (1..=orders.len()).map(|j| format!("a{j}")).collect();
    let items = (1..=m).map(|i| format!("i{i}")).collect();
    Instance::from_orders(agents, items, orders).unwrap()
}

pub fn random_instance(rng: &mut impl Rng, n: usize, m: usize) -> Instance {
    let orders = (0..n)
        .map(|_| {
            let mut order: Vec<ItemId> = (0..m).collect();
            order.shuffle(rng);
            order
        })
        .collect();
    instance(orders, m)
}

/// Every permutation of `0..m`.
pub fn permutations(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut v: Vec<usize> = (0..m).collect();
    heap(&mut v, m, &mut out);
    out.sort();
    out
}

fn heap(v: &mut Vec<usize>, size: usize, out: &mut Vec<Vec<usize>>) {
    if size <= 1 {
        out.push(v.clone());
        return;
    }
    for i in 0..size {
        heap(v, size - 1, out);
        if size.is_multiple_of(2) {
            v.swap(i, size - 1);
        } else {
            v.swap(0, size - 1);
        }
    }
}

/// Every way of giving `m` items to `n` agents.
pub fn all_assignments(inst: &Instance) -> Vec<Assignment> {
    let n = inst.num_agents();
    let m = inst.num_items();
    let total = n.pow(m as u32);
    (0..total)
        .map(|mut code| {
            let owner = (0..m)
                .map(|_| {
                    let a = code % n;
                    code /= n;
                    a
                })
                .collect();
            Assignment::from_owners(inst, owner).unwrap()
        })
        .collect()
}

/// Every subset of `0..m` as a sorted list.
pub fn subsets(m: usize) -> Vec<Vec<ItemId>> {
    (0u32..1 << m)
        .map(|mask| (0..m).filter(|&i| mask >> i & 1 == 1).collect())
        .collect()
}

/// Outcome of every policy in the class, found by plain enumeration.
pub fn class_outcomes(inst: &Instance, cls: PolicyClass) -> Vec<Assignment> {
    enumerate_policies(inst, cls, u64::MAX)
        .unwrap()
        .map(|pi| execute_policy(inst, &pi).unwrap().assignment)
        .collect()
}

/// Policies of the class generated from their definition, independently of
/// the library's enumerator.
pub fn class_by_definition(n: usize, m: usize, cls: PolicyClass) -> Vec<Policy> {
    let mut all: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..m {
        all = all
            .into_iter()
            .flat_map(|p| {
                (0..n).map(move |a| {
                    let mut q = p.clone();
                    q.push(a);
                    q
                })
            })
            .collect();
    }
    let k = m.checked_div(n).unwrap_or(0);
    let rounds =
        |p: &Vec<usize>| -> Vec<Vec<usize>> { p.chunks(n.max(1)).map(|c| c.to_vec()).collect() };
    let is_perm = |r: &Vec<usize>| {
        let mut s = r.clone();
        s.sort();
        s == (0..n).collect::<Vec<_>>()
    };
    all.retain(|p| match cls {
        PolicyClass::Arbitrary => true,
        PolicyClass::Balanced => (0..n).all(|a| p.iter().filter(|&&x| x == a).count() == k),
        PolicyClass::RecursivelyBalanced => rounds(p).iter().all(is_perm),
        PolicyClass::StrictAlternation => {
            let r = rounds(p);
            r.iter().all(is_perm) && r.iter().all(|x| *x == r[0])
        }
        PolicyClass::BalancedAlternation => {
            let r = rounds(p);
            r.iter().all(is_perm)
                && r.iter().enumerate().all(|(i, x)| {
                    if i % 2 == 0 {
                        *x == r[0]
                    } else {
                        x.iter().rev().eq(r[0].iter())
                    }
                })
        }
    });
    all.into_iter().map(Policy::new).collect()
}
