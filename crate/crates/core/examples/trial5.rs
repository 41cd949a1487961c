use qci_core::generic::*;

fn main() {
    for n in [3usize, 4] {
        let t = std::time::Instant::now();
        let cfg = ExperimentConfig {
            n,
            prime: 101,
            trials: 25,
            seed: 7,
        };
        let rep = run_experiment(&cfg);
        let ext = rep.trials.iter().filter(|t| t.pair_over_extension).count();
        let ewo = rep
            .trials
            .iter()
            .filter(|t| t.existence_without_witness)
            .count();
        println!(
            "n={n}: pairs {}/{} (ext {ext}) existence-only {ewo} anomalies {} in {:?}",
            rep.pairs_found(),
            rep.trials.len(),
            rep.anomaly_count(),
            t.elapsed()
        );
        for tr in &rep.trials {
            for a in &tr.anomalies {
                println!("  trial {}: {a}", tr.trial);
            }
        }
    }
    let t = std::time::Instant::now();
    let cfg = ExperimentConfig {
        n: 5,
        prime: 101,
        trials: 25,
        seed: 7,
    };
    let rep = run_experiment(&cfg);
    println!(
        "n=5: pairs {} existence-only {} anomalies {} in {:?}",
        rep.pairs_found(),
        rep.trials
            .iter()
            .filter(|t| t.existence_without_witness)
            .count(),
        rep.anomaly_count(),
        t.elapsed()
    );
}
