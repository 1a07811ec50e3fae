use std::collections::BTreeMap;

use proptest::prelude::*;

use netcentric::media::MediaClass;
use netcentric::money::Cents;
use netcentric::sim::{
    generate_arrivals, run, run_traced, run_with_arrivals, Architecture, BillingCycle, DurationModel, SimConfig,
    TopologySpec, UniformTopology, Workload,
};

fn config() -> impl Strategy<Value = SimConfig> {
    (
        prop::sample::select(vec![Architecture::CdnBased, Architecture::WalledGarden, Architecture::GeneralChain]),
        1usize..5,
        5.0..200.0f64,
        0usize..3,
        0.0..0.5f64,
        any::<bool>(),
        1.0..6.0f64,
        (1.0..200.0f64, 1.0..45.0f64, any::<u64>()),
        prop::collection::vec(0.0..3.0f64, 5),
        0.0..=1.0f64,
    )
        .prop_map(
            |(architecture, isps, capacity, transit_hops, margin, guaranteed, overprovision, (rate, mean, seed), w, rebate)| {
                let mut mix: Vec<(MediaClass, f64)> = MediaClass::ALL.into_iter().zip(w).collect();
                mix[1].1 += 0.1;
                SimConfig {
                    topology: TopologySpec::Uniform(UniformTopology {
                        architecture,
                        isps,
                        capacity,
                        transit_hops,
                        margin,
                        ..UniformTopology::default()
                    }),
                    workload: Workload {
                        arrival_rate: rate,
                        duration: DurationModel::Exponential(mean),
                        mix,
                        users: 50,
                        horizon: 180,
                        seed,
                    },
                    guaranteed,
                    overprovision,
                    billing: netcentric::sim::BillingPolicy { sla_rebate: rebate },
                    ..SimConfig::default()
                }
            },
        )
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn capacity_is_never_exceeded(cfg in config()) {
        let (report, trace) = run_traced(&cfg).unwrap();
        for ev in &trace {
            for (r, c) in ev.reserved.iter().zip(&ev.capacity) {
                prop_assert!(r <= c);
            }
        }
        prop_assert_eq!(report.offered, report.admitted + report.rejected);
        prop_assert_eq!(report.admitted, report.completed + report.sla_violated);
        prop_assert!(report.force_completed <= report.admitted);
        prop_assert!(trace.last().is_none_or(|ev| ev.reserved.iter().all(|r| r.0 == 0)));
    }

    #[test]
    fn money_is_conserved(cfg in config()) {
        let report = run(&cfg).unwrap();
        let mut recomputed: BTreeMap<&str, (Cents, Cents)> = BTreeMap::new();
        for r in &report.ledger {
            prop_assert!(r.amount >= Cents::ZERO);
            recomputed.entry(&r.payee).or_default().0 += r.amount;
            recomputed.entry(&r.payer).or_default().1 += r.amount;
        }
        let net: i64 = report.parties.values().map(|t| t.net().0).sum();
        prop_assert_eq!(net, 0);
        for (party, totals) in &report.parties {
            let (rev, exp) = recomputed.get(party.as_str()).copied().unwrap_or_default();
            prop_assert_eq!((totals.revenue, totals.expense), (rev, exp));
        }
        let cycles_per_session = match cfg.topology.architecture() {
            Architecture::CdnBased => 2,
            _ => 1,
        };
        prop_assert_eq!(report.ledger.len() as u64, report.admitted * cycles_per_session);
        if cfg.topology.architecture() != Architecture::CdnBased {
            prop_assert!(report.ledger.iter().all(|r| r.cycle == BillingCycle::IspToCorp));
        }
    }

    #[test]
    fn same_seed_same_bytes(cfg in config()) {
        let a = run(&cfg).unwrap();
        let b = run(&cfg).unwrap();
        prop_assert_eq!(a.to_csv(), b.to_csv());
        prop_assert_eq!(a.ledger_csv(), b.ledger_csv());
    }

    #[test]
    fn arrivals_are_ordered_and_inside_the_horizon(cfg in config()) {
        let arrivals = generate_arrivals(&cfg.workload).unwrap();
        prop_assert!(arrivals.windows(2).all(|w| w[0].arrival <= w[1].arrival));
        prop_assert!(arrivals.iter().all(|a| (0..cfg.workload.horizon).contains(&a.arrival) && a.duration >= 1));
        prop_assert!(arrivals.iter().enumerate().all(|(i, a)| a.id == i as u64));
    }

    #[test]
    fn replaying_generated_arrivals_matches_run(cfg in config()) {
        let arrivals = generate_arrivals(&cfg.workload).unwrap();
        prop_assert_eq!(run_with_arrivals(&cfg, &arrivals, None).unwrap(), run(&cfg).unwrap());
    }
}

#[test]
fn raising_capacity_never_lowers_single_link_acceptance_for_fixed_size_sessions() {
    let base = |capacity: f64| SimConfig {
        topology: TopologySpec::Uniform(UniformTopology {
            isps: 1,
            capacity,
            ..UniformTopology::default()
        }),
        workload: Workload {
            arrival_rate: 240.0,
            mix: vec![(MediaClass::Telepresence, 1.0)],
            ..Workload::default()
        },
        ..SimConfig::default()
    };
    let ratios: Vec<f64> = [20.0, 40.0, 80.0, 160.0, 320.0, 1280.0]
        .iter()
        .map(|&c| run(&base(c)).unwrap().acceptance_ratio)
        .collect();
    assert!(ratios.windows(2).all(|w| w[0] <= w[1]), "{ratios:?}");
    assert_eq!(*ratios.last().unwrap(), 1.0);
}

mod econ_and_media {
    use proptest::prelude::*;

    use netcentric::econ::{
        in_place_baseline, monthly_cost, optimize_settlement, telecom_budget, CommuteMode, CostParams, NcfValue,
        ResidenceOption,
    };
    use netcentric::media::{feasible_media, ConnectionProfile, MediaPolicy, SlaSpec};
    use netcentric::money::Cents;

    fn option() -> impl Strategy<Value = ResidenceOption> {
        (0.0..8000.0f64, 0.0..900.0f64, 1i64..1_000_000, prop::sample::select(CommuteMode::ALL.to_vec()), any::<bool>())
            .prop_map(|(miles, minutes, housing, mode, hotel)| {
                let mut o = ResidenceOption::new("r", miles, minutes, Cents(housing), mode);
                o.hotel = hotel && mode.is_air();
                o
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig { cases: 1000, failure_persistence: None, ..ProptestConfig::default() })]

        #[test]
        fn optimizer_is_no_worse_than_any_option(opts in prop::collection::vec(option(), 1..10), n in 0.0..=1.0f64) {
            let p = CostParams::default();
            let n = NcfValue::new(n).unwrap();
            let best = optimize_settlement(&opts, n, &p).unwrap();
            for o in &opts {
                prop_assert!(best.cost.total <= monthly_cost(o, n, &p).total);
            }
        }

        #[test]
        fn budget_is_baseline_minus_cost(o in option(), n in 0.0..=1.0f64) {
            let p = CostParams::default();
            let n = NcfValue::new(n).unwrap();
            let base = in_place_baseline(&o, &p);
            let b = telecom_budget(&o, n, &p, &base);
            prop_assert_eq!(b, base.total - monthly_cost(&o, n, &p).total);
        }

        #[test]
        fn faster_lines_carry_more(down in 0.0..500.0f64, extra in 0.0..500.0f64, factor in 1.0..12.0f64, guaranteed: bool) {
            let sla = SlaSpec::default();
            let policy = MediaPolicy::default();
            let slow = ConnectionProfile { down, ..ConnectionProfile::default() };
            let fast = ConnectionProfile { down: down + extra, ..slow };
            let a = feasible_media(&slow, factor, &sla, guaranteed, &policy).unwrap();
            let b = feasible_media(&fast, factor, &sla, guaranteed, &policy).unwrap();
            prop_assert!(a.is_subset(&b));
            let g = feasible_media(&slow, factor, &sla, true, &policy).unwrap();
            let be = feasible_media(&slow, factor, &sla, false, &policy).unwrap();
            prop_assert!(be.is_subset(&g));
        }
    }
}
