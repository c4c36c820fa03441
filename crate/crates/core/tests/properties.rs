use dcs_core::oracle::DEFAULT_BRUTE_CAP;
use dcs_core::{
    bellman_ford, brute_force, build_index, domain_predecessor, evaluate, gen, solve_fast,
    solve_fast_with, solve_naive, Assignment, Constraint, Domain, Family, GenConfig, Policy,
    Scalar, SolveOptions, System, UnrestrictedOutcome, Var,
};
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = Scalar> {
    prop_oneof![
        (-50i64..50).prop_map(Scalar::int),
        (-50i64..50, 1i64..12).prop_map(|(p, q)| Scalar::ratio(p, q).unwrap()),
        any::<i64>().prop_map(Scalar::int),
    ]
}

fn domain(max_k: usize) -> impl Strategy<Value = Domain> {
    proptest::collection::btree_set(-20i64..20, 1..=max_k)
        .prop_map(|set| Domain::new(set.into_iter().map(Scalar::int).collect()).unwrap())
}

fn system(max_n: usize, max_m: usize) -> impl Strategy<Value = System> {
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec((0..n, 0..n, -12i64..12), 0..=max_m).prop_map(move |triples| {
            let constraints = triples
                .into_iter()
                .map(|(i, j, b)| Constraint::new(Var(i), Var(j), b))
                .collect();
            System::new(n, constraints).unwrap()
        })
    })
}

/// Value-by-value substitution, independent of `evaluate`.
fn violates(c: &Constraint, s: &Assignment) -> bool {
    let lhs = s.value(c.i).clone() - s.value(c.j).clone();
    lhs > c.b
}

proptest! {
    #[test]
    fn scalar_sub_then_add(a in scalar(), b in scalar()) {
        prop_assert_eq!(&(&a - &b) + &b, a);
    }

    #[test]
    fn scalar_total_order(a in scalar(), b in scalar(), c in scalar()) {
        if a <= b && b <= a {
            prop_assert_eq!(&a, &b);
        }
        if a <= b && b <= c {
            prop_assert!(a <= c);
        }
        prop_assert_eq!(a.cmp(&b), (&a - &b).cmp(&Scalar::ZERO));
    }

    #[test]
    fn scalar_text_round_trip(a in scalar()) {
        let text = a.to_string();
        prop_assert_eq!(text.parse::<Scalar>().unwrap(), a);
    }

    #[test]
    fn index_covers_every_position(sys in system(6, 20)) {
        let idx = build_index(&sys);
        let mut out: Vec<usize> = sys.vars().flat_map(|v| idx.outgoing(v).to_vec()).collect();
        let mut inc: Vec<usize> = sys.vars().flat_map(|v| idx.incoming(v).to_vec()).collect();
        out.sort_unstable();
        inc.sort_unstable();
        let all: Vec<usize> = (0..sys.m()).collect();
        prop_assert_eq!(&out, &all);
        prop_assert_eq!(&inc, &all);
        for v in sys.vars() {
            prop_assert!(idx.outgoing(v).windows(2).all(|w| w[0] < w[1]));
            prop_assert!(idx.outgoing(v).iter().all(|&p| sys.constraint(p).i == v));
            prop_assert!(idx.incoming(v).iter().all(|&p| sys.constraint(p).j == v));
        }
    }

    #[test]
    fn evaluate_matches_substitution(sys in system(5, 15), seed in any::<u64>(), d in domain(4)) {
        let positions = (0..sys.n()).map(|v| (seed as usize).wrapping_mul(v + 7) % d.k()).collect();
        let s = Assignment::from_positions(&d, positions);
        let report = evaluate(&sys, &s);
        let expected: Vec<usize> =
            (0..sys.m()).filter(|&p| violates(sys.constraint(p), &s)).collect();
        prop_assert_eq!(&report.violated, &expected);
        prop_assert_eq!(report.satisfied_count + report.violated.len(), sys.m());
    }

    #[test]
    fn predecessor_matches_scan(d in domain(6), bound in scalar()) {
        let scanned = d.values().iter().rposition(|v| *v <= bound);
        prop_assert_eq!(domain_predecessor(&d, &bound), scanned);
    }

    #[test]
    fn fast_matches_brute_force(sys in system(4, 10), d in domain(3)) {
        let oracle = brute_force(&sys, &d, DEFAULT_BRUTE_CAP).unwrap();
        let (outcome, _) = solve_fast(&sys, &d, Policy::Lifo);
        prop_assert_eq!(outcome.is_feasible(), oracle.is_feasible());
        if let Some(s) = outcome.assignment() {
            let max = oracle.pointwise_max.as_ref().unwrap();
            prop_assert_eq!(s, max);
            prop_assert!(evaluate(&sys, max).is_feasible());
        }
    }

    #[test]
    fn naive_and_policies_agree(sys in system(6, 16), d in domain(4), seed in any::<u64>()) {
        let naive = solve_naive(&sys, &d);
        for policy in [Policy::Lifo, Policy::Fifo, Policy::Random(seed)] {
            let (fast, _) = solve_fast_with(&sys, &d, &SolveOptions::debug(policy)).unwrap();
            prop_assert!(fast.agrees_with(&naive), "{policy}: {fast:?} vs {naive:?}");
        }
    }

    #[test]
    fn witness_blocks(sys in system(6, 16), d in domain(4)) {
        for outcome in [solve_naive(&sys, &d), solve_fast(&sys, &d, Policy::Fifo).0] {
            if let Some(inf) = outcome.infeasibility() {
                let c = sys.constraint(inf.witness);
                prop_assert_eq!(c.i, inf.blocked);
                prop_assert!(d.min() - &inf.blocking_value > c.b);
            }
        }
    }

    #[test]
    fn counters_within_bounds(sys in system(8, 30), d in domain(6), seed in any::<u64>()) {
        let (n, m, k) = (sys.n() as u64, sys.m() as u64, d.k() as u64);
        let (_, stats) = solve_fast(&sys, &d, Policy::Random(seed));
        prop_assert!(stats.removals <= n * k);
        prop_assert!(stats.walk_steps <= n * (k - 1));
        prop_assert!(stats.removals <= stats.updates + 1);
        prop_assert!(stats.work() <= 4 * (n + k * m));
    }

    #[test]
    fn bellman_ford_certificates(sys in system(6, 14)) {
        match bellman_ford(&sys) {
            UnrestrictedOutcome::Feasible(s) => prop_assert!(evaluate(&sys, &s).is_feasible()),
            UnrestrictedOutcome::NegativeCycle(cycle) => {
                prop_assert!(!cycle.is_empty());
                let total: Scalar = cycle.iter().map(|&p| &sys.constraint(p).b).sum();
                prop_assert!(total.is_negative());
                // each edge ends where the next one starts
                for w in 0..cycle.len() {
                    let here = sys.constraint(cycle[w]);
                    let next = sys.constraint(cycle[(w + 1) % cycle.len()]);
                    prop_assert_eq!(here.i, next.j);
                }
            }
        }
    }

    #[test]
    fn negative_cycle_rules_out_every_domain(sys in system(5, 12), d in domain(4)) {
        if !bellman_ford(&sys).is_feasible() {
            prop_assert!(!solve_fast(&sys, &d, Policy::Lifo).0.is_feasible());
        }
    }
}

#[test]
fn separation_example() {
    let sys = System::from_triples(2, &[(1, 2, -3), (2, 1, 5)]).unwrap();
    let d = Domain::from_ints(&[0, 10]).unwrap();
    assert!(!solve_fast(&sys, &d, Policy::Lifo).0.is_feasible());
    assert!(!brute_force(&sys, &d, DEFAULT_BRUTE_CAP)
        .unwrap()
        .is_feasible());
    let UnrestrictedOutcome::Feasible(real) = bellman_ford(&sys) else {
        panic!("real solution exists")
    };
    assert!(evaluate(&sys, &real).is_feasible());
    let witness = Assignment::new(vec![Scalar::int(0), Scalar::int(3)]);
    assert!(evaluate(&sys, &witness).is_feasible());
}

#[test]
fn fractional_instances() {
    // 1/3-spaced domain; x1 <= 4/3 - 1/2 = 5/6 rounds down to 2/3
    let third = |p: i64| Scalar::ratio(p, 3).unwrap();
    let d = Domain::new((0..6).map(third).collect()).unwrap();
    let sys = System::from_triples(
        3,
        &[(1, 2, Scalar::ratio(-1, 2).unwrap()), (2, 3, third(-1))],
    )
    .unwrap();
    let oracle = brute_force(&sys, &d, DEFAULT_BRUTE_CAP).unwrap();
    let (outcome, _) = solve_fast(&sys, &d, Policy::Lifo);
    assert_eq!(outcome.assignment(), oracle.pointwise_max.as_ref());
    assert_eq!(
        outcome.assignment().unwrap().values(),
        &[third(2), third(4), third(5)]
    );
}

#[test]
fn planted_family_contracts() {
    for seed in 0..100 {
        let config = GenConfig::new(Family::Planted, 12, 40, 5, seed);
        let (sys, d, planted) = gen::gen_planted(&config).unwrap();
        assert!(evaluate(&sys, &planted).is_feasible());
        let (outcome, _) = solve_fast(&sys, &d, Policy::Lifo);
        let s = outcome
            .assignment()
            .expect("planted instances are feasible");
        assert!(planted.le_pointwise(s));
    }
}

#[test]
fn restricted_infeasible_family_contracts() {
    for seed in 0..100 {
        let config = GenConfig::new(Family::RestrictedInfeasible, 4, 6, 3, seed);
        let (sys, d) = gen::gen_restricted_infeasible(&config).unwrap();
        assert!(bellman_ford(&sys).is_feasible(), "seed {seed}");
        assert!(
            !solve_fast(&sys, &d, Policy::Lifo).0.is_feasible(),
            "seed {seed}"
        );
        assert!(
            !brute_force(&sys, &d, DEFAULT_BRUTE_CAP)
                .unwrap()
                .is_feasible(),
            "seed {seed}"
        );
    }
}
