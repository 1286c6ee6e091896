use bitangent_core::bitangent::{solve_all, BitangentSet, SolverConfig};
use bitangent_core::catalog::{entry, TypeId};
use bitangent_core::polynum::C64;
use bitangent_core::projgeom::TernaryQuartic;

fn same_lines(a: &BitangentSet, b: &BitangentSet) -> bool {
    a.len() == b.len() && a.items.iter().all(|x| b.find(&x.line, 1e-6).is_some())
}

fn curves() -> Vec<TernaryQuartic> {
    let c = |x: f64| C64::new(x, 0.0);
    vec![
        TernaryQuartic::fermat(),
        entry(TypeId::VII).equation(&[c(-3.0), c(1.0)]).unwrap(),
        entry(TypeId::XI).figure_quartic().unwrap(),
    ]
}

#[test]
fn any_two_charts_give_all_lines() {
    for f in curves() {
        let full = solve_all(&f, &SolverConfig::default()).unwrap();
        for charts in [vec![0, 1], vec![0, 2], vec![1, 2]] {
            let cfg = SolverConfig {
                charts: charts.clone(),
                ..Default::default()
            };
            let part = solve_all(&f, &cfg).unwrap();
            assert!(same_lines(&full, &part), "charts {charts:?}");
        }
    }
}

#[test]
fn seed_changes_the_frame_not_the_lines() {
    for f in curves() {
        let a = solve_all(&f, &SolverConfig::default()).unwrap();
        let b = solve_all(
            &f,
            &SolverConfig {
                seed: 12345,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(same_lines(&a, &b));
        let again = solve_all(&f, &SolverConfig::default()).unwrap();
        assert_eq!(a, again);
    }
}
