//! Runs the acceptance suite over a range of seeds and lists failing
//! criteria. Usage: `cargo run --release --example seed_sweep -- 100 200`.

use hardy_cli::config::RunConfig;
use hardy_cli::suite::run_suite;

fn main() {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("integer seed")).collect();
    let (from, to) = match args[..] {
        [a, b] => (a, b),
        [a] => (a, a + 1),
        _ => (0, 20),
    };
    let mut clean = 0;
    for seed in from..to {
        let report = run_suite(&RunConfig {
            seed,
            ..RunConfig::default()
        });
        let failing: Vec<u32> = report.criteria.iter().filter(|c| !c.pass).map(|c| c.id).collect();
        if failing.is_empty() {
            clean += 1;
        } else {
            println!("seed {seed}: failing criteria {failing:?}");
        }
    }
    println!("{clean}/{} seeds pass every criterion", to - from);
}
