//! Acceptance run: one PASS/FAIL line per criterion.

mod common;

use std::collections::{BTreeSet, HashMap};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use common::{all_assignments, class_by_definition, instance, permutations, random_instance, EX1};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use seqalloc::characterize::achievable;
use seqalloc::engine::{execute_policy, outcome_probability, outcomes, policy_in_class, Outcome};
use seqalloc::flows::{max_bipartite_matching, max_flow, FlowNetwork};
use seqalloc::pareto::is_pareto_optimal;
use seqalloc::queries::{brute_force_solve, solve, Answer, Method, Problem, Query, SolveMethod};
use seqalloc::reductions::{generate, parse_x3c, reduce_x3c_to_balalt, Reduction, ReductionOutput};
use seqalloc::{parse_instance, Assignment, Error, Instance, Policy, PolicyClass};

const LIMIT: u64 = 400_000_000;

const CLASSES: [PolicyClass; 5] = [
    PolicyClass::Arbitrary,
    PolicyClass::Balanced,
    PolicyClass::RecursivelyBalanced,
    PolicyClass::StrictAlternation,
    PolicyClass::BalancedAlternation,
];

/// Witnesses seen so far and the ones that failed to certify their answer.
#[derive(Default)]
struct Witnesses {
    checked: usize,
    bad: Vec<String>,
}

impl Witnesses {
    fn check(
        &mut self,
        inst: &Instance,
        pi: &Policy,
        cls: PolicyClass,
        outcome: &Outcome,
        want: bool,
    ) {
        self.checked += 1;
        let in_class = policy_in_class(inst, pi, cls).unwrap_or(false);
        let holds = execute_policy(inst, pi)
            .map(|run| outcome.holds(&run.assignment))
            .unwrap_or(!want);
        if !in_class || holds != want {
            self.bad.push(format!(
                "{} {:?}\n{}",
                pi.to_text(inst),
                cls,
                inst.to_text()
            ));
        }
    }

    fn check_answer(&mut self, inst: &Instance, q: &Query, ans: &Answer) {
        if let Some(w) = &ans.witness {
            let outcome = q.outcome(inst).unwrap();
            // possible-yes and necessary-no both point at a satisfying or violating run
            self.check(inst, w, q.cls, &outcome, q.problem.is_possible());
        }
    }
}

/// Distinct outcomes of every class, computed from the class definitions.
struct Oracle {
    policies: HashMap<(usize, usize, PolicyClass), Vec<Policy>>,
}

impl Oracle {
    fn new() -> Self {
        Oracle {
            policies: HashMap::new(),
        }
    }

    fn class(&mut self, n: usize, m: usize, cls: PolicyClass) -> &[Policy] {
        self.policies
            .entry((n, m, cls))
            .or_insert_with(|| class_by_definition(n, m, cls))
    }

    fn outcomes(&mut self, inst: &Instance, cls: PolicyClass) -> BTreeSet<Assignment> {
        let (n, m) = (inst.num_agents(), inst.num_items());
        self.class(n, m, cls)
            .iter()
            .map(|pi| execute_policy(inst, pi).unwrap().assignment)
            .collect()
    }
}

fn decide(outs: &BTreeSet<Assignment>, q: &Query, inst: &Instance) -> bool {
    let outcome = q.outcome(inst).unwrap();
    if q.problem.is_possible() {
        outs.iter().any(|m| outcome.holds(m))
    } else {
        outs.iter().all(|m| outcome.holds(m))
    }
}

/// Every n=2, m=4 profile followed by 200 seeded n=3, m=6 profiles.
fn closure_family() -> Vec<Instance> {
    let perms = permutations(4);
    let mut family = Vec::new();
    for p1 in &perms {
        for p2 in &perms {
            family.push(instance(vec![p1.clone(), p2.clone()], 4));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        family.push(random_instance(&mut rng, 3, 6));
    }
    family
}

/// The smaller bundle is matched into the larger one item by item.
fn bundle_geq(inst: &Instance, agent: usize, big: &[usize], small: &[usize]) -> bool {
    let rank = |b: &[usize]| {
        let mut r: Vec<usize> = b.iter().map(|&i| inst.rank(agent, i)).collect();
        r.sort();
        r
    };
    let (b, s) = (rank(big), rank(small));
    b.len() >= s.len() && s.iter().zip(&b).all(|(x, y)| y <= x)
}

/// Pareto optimal assignments by pairwise comparison of all assignments.
fn pareto_by_definition(inst: &Instance) -> BTreeSet<Assignment> {
    let all = all_assignments(inst);
    let n = inst.num_agents();
    let shares: Vec<Vec<Vec<usize>>> = all
        .iter()
        .map(|m| (0..n).map(|j| m.share(j)).collect())
        .collect();
    (0..all.len())
        .filter(|&x| {
            !(0..all.len()).any(|y| {
                (0..n).all(|j| bundle_geq(inst, j, &shares[y][j], &shares[x][j]))
                    && (0..n).any(|j| !bundle_geq(inst, j, &shares[x][j], &shares[y][j]))
            })
        })
        .map(|x| all[x].clone())
        .collect()
}

fn criterion_1() -> Result<String, String> {
    let inst = parse_instance(EX1).unwrap();
    let pi = Policy::parse(&inst, "a1 a2 a2 a1").unwrap();
    let start = Instant::now();
    let m = execute_policy(&inst, &pi).unwrap().assignment;
    let elapsed = start.elapsed();
    let text = m.to_text(&inst);
    if text != "a1: b e\na2: c d\n" {
        return Err(format!("got {text:?}"));
    }
    if elapsed >= Duration::from_millis(1) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("a1={{b,e}} a2={{c,d}} in {elapsed:?}"))
}

fn criterion_2(family: &[Instance], oracle: &mut Oracle) -> Result<String, String> {
    let start = Instant::now();
    for (idx, inst) in family.iter().enumerate() {
        let outs = oracle.outcomes(inst, PolicyClass::Arbitrary);
        let po: BTreeSet<Assignment> = all_assignments(inst)
            .into_iter()
            .filter(|m| is_pareto_optimal(inst, m).unwrap())
            .collect();
        if outs != po {
            return Err(format!(
                "instance {idx}: outcomes differ from Pareto set\n{}",
                inst.to_text()
            ));
        }
        if po != pareto_by_definition(inst) {
            return Err(format!(
                "instance {idx}: Pareto test differs from definition\n{}",
                inst.to_text()
            ));
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(300) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("{} instances in {elapsed:?}", family.len()))
}

fn archive(cls: PolicyClass, idx: usize, inst: &Instance, m: &Assignment) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("counterexamples");
    let _ = std::fs::create_dir_all(&dir);
    let path = dir.join(format!("{}-{idx}.txt", cls.name()));
    let body = format!("{}# assignment\n{}", inst.to_text(), m.to_text(inst));
    let _ = std::fs::write(&path, body);
    path
}

fn criterion_3(
    family: &[Instance],
    oracle: &mut Oracle,
    wit: &mut Witnesses,
) -> Result<String, String> {
    let start = Instant::now();
    let mut checks = 0usize;
    let mut failures = Vec::new();
    for (idx, inst) in family.iter().enumerate() {
        let assignments = all_assignments(inst);
        for cls in CLASSES {
            let outs = oracle.outcomes(inst, cls);
            for m in &assignments {
                checks += 1;
                let got = achievable(inst, m, cls).unwrap();
                if got.is_some() != outs.contains(m) {
                    let path = archive(cls, idx, inst, m);
                    failures.push(format!(
                        "{cls:?} on instance {idx}, archived at {}",
                        path.display()
                    ));
                }
                if let Some(pi) = &got {
                    wit.check(inst, pi, cls, &Outcome::AssignmentEquals(m.clone()), true);
                }
            }
        }
    }
    let elapsed = start.elapsed();
    if !failures.is_empty() {
        return Err(format!(
            "{} disagreements, first: {}",
            failures.len(),
            failures[0]
        ));
    }
    if elapsed > Duration::from_secs(600) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!(
        "{checks} (instance, class, assignment) checks in {elapsed:?}"
    ))
}

fn random_set(rng: &mut ChaCha8Rng, m: usize, size: usize) -> Vec<usize> {
    let mut items: Vec<usize> = (0..m).collect();
    items.shuffle(rng);
    items.truncate(size);
    items.sort();
    items
}

/// A target assignment: half the time the outcome of a class member.
fn random_target(
    rng: &mut ChaCha8Rng,
    inst: &Instance,
    oracle: &mut Oracle,
    cls: PolicyClass,
) -> Assignment {
    let (n, m) = (inst.num_agents(), inst.num_items());
    if rng.gen_bool(0.5) {
        let pi = oracle.class(n, m, cls).choose(rng).unwrap().clone();
        execute_policy(inst, &pi).unwrap().assignment
    } else {
        let owners = (0..m).map(|_| rng.gen_range(0..n)).collect();
        Assignment::from_owners(inst, owners).unwrap()
    }
}

fn criterion_5(oracle: &mut Oracle, wit: &mut Witnesses) -> Result<String, String> {
    use PolicyClass::*;
    use Problem::*;
    let start = Instant::now();
    let shapes = [
        (2, 1),
        (2, 2),
        (2, 3),
        (3, 1),
        (3, 2),
        (3, 3),
        (4, 1),
        (4, 2),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut per_cell: HashMap<String, usize> = HashMap::new();
    for idx in 0..500 {
        let (n, k) = shapes[idx % shapes.len()];
        let m = n * k;
        let inst = random_instance(&mut rng, n, m);
        let a = rng.gen_range(0..n);
        let mut queries = vec![
            Query::item(NecessaryItem, Balanced, a, rng.gen_range(0..m)),
            Query::top_k(NecessarySet, Balanced, a),
            Query::set(NecessarySet, Balanced, a, random_set(&mut rng, m, k)),
            Query::set(NecessarySubset, Balanced, a, {
                let size = rng.gen_range(1..=k + 1);
                random_set(&mut rng, m, size)
            }),
            Query::set(PossibleSet, Arbitrary, a, {
                let size = rng.gen_range(0..=m);
                random_set(&mut rng, m, size)
            }),
            Query::set(PossibleSubset, Arbitrary, a, {
                let size = rng.gen_range(0..=m);
                random_set(&mut rng, m, size)
            }),
        ];
        for cls in CLASSES {
            let target = random_target(&mut rng, &inst, oracle, cls);
            queries.push(Query::assignment(NecessaryAssignment, cls, target));
        }
        if k == 2 {
            queries.push(Query::top_k(PossibleSet, RecursivelyBalanced, a));
            queries.push(Query::top_k(PossibleSet, StrictAlternation, a));
        }
        let mut outs: HashMap<PolicyClass, BTreeSet<Assignment>> = HashMap::new();
        for q in &queries {
            let exact = solve(&inst, q, SolveMethod::Exact, LIMIT).map_err(|e| format!("{e}"))?;
            if exact.method != Method::ExactPoly {
                return Err(format!("{:?} {:?} not answered exactly", q.problem, q.cls));
            }
            let brute = brute_force_solve(&inst, q, LIMIT).unwrap();
            let scan = decide(
                outs.entry(q.cls)
                    .or_insert_with(|| oracle.outcomes(&inst, q.cls)),
                q,
                &inst,
            );
            if exact.decision != brute.decision || brute.decision != scan {
                return Err(format!(
                    "instance {idx}: {:?} {:?} exact={} brute={} scan={}\n{}",
                    q.problem,
                    q.cls,
                    exact.decision,
                    brute.decision,
                    scan,
                    inst.to_text()
                ));
            }
            wit.check_answer(&inst, q, &exact);
            wit.check_answer(&inst, q, &brute);
            *per_cell
                .entry(format!("{}/{}", q.problem, q.cls.name()))
                .or_default() += 1;
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(600) {
        return Err(format!("took {elapsed:?}"));
    }
    let total: usize = per_cell.values().sum();
    Ok(format!(
        "{total} queries over {} cells in {elapsed:?}",
        per_cell.len()
    ))
}

fn criterion_6(oracle: &mut Oracle, wit: &mut Witnesses) -> Result<String, String> {
    use Problem::*;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let pairs = [
        (PossibleItem, NecessaryItem),
        (PossibleSet, NecessarySet),
        (PossibleSubset, NecessarySubset),
        (PossibleAssignment, NecessaryAssignment),
    ];
    let mut checks = 0;
    for idx in 0..100 {
        let n = rng.gen_range(2..=3);
        let k = rng.gen_range(1..=2);
        let m = n * k;
        let inst = random_instance(&mut rng, n, m);
        for cls in CLASSES {
            let a = rng.gen_range(0..n);
            let item = rng.gen_range(0..m);
            let set = random_set(&mut rng, m, k);
            let sub = {
                let size = rng.gen_range(1..=k);
                random_set(&mut rng, m, size)
            };
            let target = random_target(&mut rng, &inst, oracle, cls);
            for (pos, nec) in pairs {
                let make = |p: Problem| match p {
                    PossibleItem | NecessaryItem => Query::item(p, cls, a, item),
                    PossibleSet | NecessarySet => Query::set(p, cls, a, set.clone()),
                    PossibleSubset | NecessarySubset => Query::set(p, cls, a, sub.clone()),
                    _ => Query::assignment(p, cls, target.clone()),
                };
                let (qp, qn) = (make(pos), make(nec));
                let prob =
                    outcome_probability(&inst, cls, &qp.outcome(&inst).unwrap(), LIMIT).unwrap();
                let ap = solve(&inst, &qp, SolveMethod::Auto, LIMIT).unwrap();
                let an = solve(&inst, &qn, SolveMethod::Auto, LIMIT).unwrap();
                wit.check_answer(&inst, &qp, &ap);
                wit.check_answer(&inst, &qn, &an);
                checks += 1;
                let positive = *prob.numer() > 0;
                let certain = prob.numer() == prob.denom();
                if positive != ap.decision || certain != an.decision {
                    return Err(format!(
                        "instance {idx}: {pos} {cls:?} p={prob} possible={} necessary={}\n{}",
                        ap.decision,
                        an.decision,
                        inst.to_text()
                    ));
                }
            }
        }
    }
    Ok(format!("{checks} query pairs"))
}

const PI_REDUCTIONS: [Reduction; 6] = [
    Reduction::Nib,
    Reduction::Nirb,
    Reduction::Kpsrb,
    Reduction::Pastrict,
    Reduction::Knstrict,
    Reduction::Knsa,
];

fn check_reduction(out: &ReductionOutput, source: bool, wit: &mut Witnesses) -> Result<(), String> {
    for (q, relation) in &out.queries {
        let ans = brute_force_solve(&out.instance, q, LIMIT).map_err(|e| e.to_string())?;
        if ans.decision != relation.apply(source) {
            return Err(format!(
                "{} {:?}: source {source}, target {}",
                out.reduction, q.problem, ans.decision
            ));
        }
        wit.check_answer(&out.instance, q, &ans);
    }
    Ok(())
}

fn source_answer(src: &Instance, agent: usize, item: usize) -> bool {
    let q = Query::item(
        Problem::PossibleItem,
        PolicyClass::RecursivelyBalanced,
        agent,
        item,
    );
    brute_force_solve(src, &q, LIMIT).unwrap().decision
}

fn criterion_7(wit: &mut Witnesses) -> Result<String, String> {
    let start = Instant::now();
    let mut sources = Vec::new();
    for p1 in permutations(2) {
        for p2 in permutations(2) {
            for agent in 0..2 {
                for item in 0..2 {
                    sources.push((instance(vec![p1.clone(), p2.clone()], 2), agent, item));
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let src = random_instance(&mut rng, 3, 3);
        sources.push((src, rng.gen_range(0..3), rng.gen_range(0..3)));
    }
    let mut generated = 0;
    for (src, agent, item) in &sources {
        let yes = source_answer(src, *agent, *item);
        for r in PI_REDUCTIONS {
            check_reduction(&generate(r, src, *agent, *item).unwrap(), yes, wit)?;
            generated += 1;
        }
    }

    // exact cover fixtures
    let small = parse_x3c("universe: x1 x2 x3\nset: x1 x2 x3\n").unwrap();
    if small.exact_cover().is_none() {
        return Err("small fixture should have a cover".into());
    }
    check_reduction(&reduce_x3c_to_balalt(&small).unwrap(), true, wit)?;
    let malformed = parse_x3c("universe: x1 x2 x3\nset: x1 x1 x2\n");
    if malformed.is_ok() {
        return Err("repeated element accepted".into());
    }
    let large = parse_x3c("universe: x1 x2 x3 x4 x5 x6\nset: x1 x2 x3\nset: x1 x2 x4\n").unwrap();
    if large.exact_cover().is_some() {
        return Err("large fixture should have no cover".into());
    }
    let out = reduce_x3c_to_balalt(&large).unwrap();
    let inst = &out.instance;
    if (inst.num_agents(), inst.num_items()) != (17, 34) {
        return Err(format!("large fixture has {} agents", inst.num_agents()));
    }
    // 17! policies: only the exact-cover side is decided exhaustively
    let (nec, relation) = &out.queries[1];
    if nec.problem != Problem::NecessaryItem || !relation.apply(false) {
        return Err("large fixture query pair malformed".into());
    }
    match brute_force_solve(inst, nec, LIMIT) {
        Err(Error::SizeLimit { .. }) => {}
        other => {
            return Err(format!(
                "expected a size limit, got {:?}",
                other.map(|a| a.decision)
            ))
        }
    }
    let outcome = nec.outcome(inst).unwrap();
    let n = inst.num_agents();
    for _ in 0..2000 {
        let mut sigma: Vec<usize> = (0..n).collect();
        sigma.shuffle(&mut rng);
        let pi =
            seqalloc::characterize::expand_first_round(&sigma, 2, PolicyClass::BalancedAlternation);
        if !outcome.holds(&execute_policy(inst, &pi).unwrap().assignment) {
            return Err(format!("sampled order {} gives __c away", pi.to_text(inst)));
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(900) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!(
        "{generated} generated instances, {} sources, exact-cover fixtures checked, in {elapsed:?}",
        sources.len()
    ))
}

fn min_cut(net: &FlowNetwork) -> u64 {
    let n = net.num_nodes();
    let inner: Vec<usize> = (0..n)
        .filter(|&v| v != net.source() && v != net.sink())
        .collect();
    (0u32..1 << inner.len())
        .map(|mask| {
            let mut side = vec![false; n];
            side[net.source()] = true;
            for (b, &v) in inner.iter().enumerate() {
                side[v] = mask >> b & 1 == 1;
            }
            net.arcs()
                .iter()
                .filter(|a| side[a.from] && !side[a.to])
                .map(|a| a.capacity)
                .sum()
        })
        .min()
        .unwrap()
}

fn criterion_8() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for idx in 0..200 {
        let n = rng.gen_range(2..=12);
        let mut net = FlowNetwork::new(n, 0, n - 1);
        for _ in 0..rng.gen_range(0..=3 * n) {
            let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if u != v && u != n - 1 && v != 0 {
                net.add_arc(u, v, rng.gen_range(0..=5));
            }
        }
        let flow = max_flow(&net).unwrap().value;
        let cut = min_cut(&net);
        if flow != cut {
            return Err(format!("network {idx}: flow {flow}, cut {cut}"));
        }
    }
    for idx in 0..200 {
        let (l, r) = (rng.gen_range(0..=8), rng.gen_range(0..=8));
        let mut edges = Vec::new();
        for u in 0..l {
            for v in 0..r {
                if rng.gen_bool(0.3) {
                    edges.push((u, v));
                }
            }
        }
        let matching = max_bipartite_matching(l, r, &edges);
        let (s, t) = (l + r, l + r + 1);
        let mut net = FlowNetwork::new(l + r + 2, s, t);
        for u in 0..l {
            net.add_arc(s, u, 1);
        }
        for v in 0..r {
            net.add_arc(l + v, t, 1);
        }
        for &(u, v) in &edges {
            net.add_arc(u, l + v, 1);
        }
        let flow = max_flow(&net).unwrap().value;
        if matching.size() as u64 != flow {
            return Err(format!(
                "graph {idx}: matching {}, flow {flow}",
                matching.size()
            ));
        }
        let pairs = matching.pairs();
        let lefts: BTreeSet<usize> = pairs.iter().map(|p| p.0).collect();
        let rights: BTreeSet<usize> = pairs.iter().map(|p| p.1).collect();
        if lefts.len() != pairs.len()
            || rights.len() != pairs.len()
            || pairs.iter().any(|p| !edges.contains(p))
        {
            return Err(format!("graph {idx}: invalid matching"));
        }
    }
    Ok("200 networks, 200 bipartite graphs".into())
}

fn criterion_9(family: &[Instance]) -> Result<String, String> {
    use PolicyClass::*;
    for (idx, inst) in family.iter().enumerate().step_by(3) {
        let o = |cls| outcomes(inst, cls, LIMIT).unwrap();
        let (ba, sa, rb, bal) = (
            o(BalancedAlternation),
            o(StrictAlternation),
            o(RecursivelyBalanced),
            o(Balanced),
        );
        let po = bal.iter().all(|m| is_pareto_optimal(inst, m).unwrap());
        if !(ba.is_subset(&rb) && sa.is_subset(&rb) && rb.is_subset(&bal) && po) {
            return Err(format!(
                "instance {idx} breaks an inclusion\n{}",
                inst.to_text()
            ));
        }
    }
    Ok(format!("{} instances", family.len().div_ceil(3)))
}

fn criterion_10() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut worst = Duration::ZERO;
    for _ in 0..10 {
        let inst = random_instance(&mut rng, 10, 100);
        let pi = Policy::new((0..100).map(|_| rng.gen_range(0..10)).collect());
        let picked = execute_policy(&inst, &pi).unwrap().assignment;
        let owners = (0..100).map(|_| rng.gen_range(0..10)).collect();
        let random = Assignment::from_owners(&inst, owners).unwrap();
        for (m, expect) in [(&picked, Some(true)), (&random, None)] {
            let start = Instant::now();
            let po = is_pareto_optimal(&inst, m).unwrap();
            worst = worst.max(start.elapsed());
            if expect.is_some_and(|e| e != po) {
                return Err("picking outcome reported as not Pareto optimal".into());
            }
        }
    }
    if worst >= Duration::from_millis(100) {
        return Err(format!("slowest call {worst:?}"));
    }
    Ok(format!("slowest of 20 calls {worst:?}"))
}

fn report(num: usize, title: &str, result: std::thread::Result<Result<String, String>>) -> bool {
    let (ok, detail) = match result {
        Ok(Ok(d)) => (true, d),
        Ok(Err(d)) => (false, d),
        Err(_) => (false, "panicked".to_string()),
    };
    println!(
        "{} criterion {num:>2} {title}: {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    ok
}

fn main() {
    let family = closure_family();
    let mut oracle = Oracle::new();
    let mut wit = Witnesses::default();
    let mut all = true;
    let mut run = |num, title, f: &mut dyn FnMut() -> Result<String, String>| {
        all &= report(num, title, catch_unwind(AssertUnwindSafe(f)));
    };
    run(1, "example execution", &mut criterion_1);
    run(
        2,
        "arbitrary outcomes are the Pareto optimal assignments",
        &mut || criterion_2(&family, &mut oracle),
    );
    run(3, "characterization matches enumeration", &mut || {
        criterion_3(&family, &mut oracle, &mut wit)
    });
    run(5, "exact algorithms match brute force", &mut || {
        criterion_5(&mut oracle, &mut wit)
    });
    run(6, "probability duality", &mut || {
        criterion_6(&mut oracle, &mut wit)
    });
    run(7, "reduction soundness", &mut || criterion_7(&mut wit));
    run(4, "witness soundness", &mut || {
        if wit.bad.is_empty() {
            Ok(format!("{} witnesses re-executed", wit.checked))
        } else {
            Err(format!(
                "{} of {} bad, first: {}",
                wit.bad.len(),
                wit.checked,
                wit.bad[0]
            ))
        }
    });
    run(8, "max flow and matching", &mut criterion_8);
    run(9, "class inclusions", &mut || criterion_9(&family));
    run(10, "Pareto test speed", &mut criterion_10);
    if !all {
        std::process::exit(1);
    }
}
