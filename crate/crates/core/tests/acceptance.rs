mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::Outcome;

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("simplicial identities on random nerves", common::simplicial_identities),
        ("nerve full-faithfulness", common::full_faithfulness),
        ("horn laws", common::horn_laws),
        ("backprop functoriality", common::backprop_functoriality),
        ("transformer equivariance", common::transformer_equivariance),
        ("migration adjunctions", common::migration_adjunction),
        ("bisimulation", common::bisimulation),
        ("metric Yoneda isometry", common::yoneda_isometry),
        ("homology", common::homology_suite),
        ("metric coinduction and zeroth-order training", common::coinduction_and_zeroth_order),
        ("lifting characterizations", common::lifting_characterizations),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let t = start.elapsed();
        match result {
            Ok(detail) => println!("PASS AC{} {name}: {detail} [{t:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL AC{} {name}: {why} [{t:.2?}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
