//! One PASS/FAIL line per criterion; exits nonzero if any fails.

use std::process::ExitCode;

fn main() -> ExitCode {
    let criteria = knot_validation::criteria();
    let mut failed = 0;
    for (i, c) in criteria.iter().enumerate() {
        match (c.run)() {
            Ok(detail) => println!("criterion {} ({}): PASS - {detail}", i + 1, c.name),
            Err(why) => {
                failed += 1;
                println!("criterion {} ({}): FAIL - {why}", i + 1, c.name);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
