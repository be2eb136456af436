//! Full verification suite: one line per criterion, all must pass.

use twins_core::acceptance;

#[test]
fn acceptance_criteria() {
    let results = acceptance::run_selected("all").expect("selector");
    let mut failures = 0;
    for r in &results {
        match &r.outcome {
            Ok(()) => println!("PASS [{}] {} {} ({} ms)", r.section, r.id, r.name, r.millis),
            Err(msg) => {
                failures += 1;
                println!("FAIL [{}] {} {} ({} ms): {}", r.section, r.id, r.name, r.millis, msg);
            }
        }
    }
    assert_eq!(failures, 0, "{failures} acceptance criteria failed");
    assert_eq!(results.len(), 14);
}
