use std::process::ExitCode;

use downleft::acceptance::{run_all, Hooks, Profile};

fn main() -> ExitCode {
    let reports = run_all(Profile::Full, &Hooks::default());
    for r in &reports {
        println!("{}", r.line());
    }
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    if failed.is_empty() {
        println!("acceptance: {} of {} criteria passed", reports.len(), reports.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed {failed:?}");
        ExitCode::FAILURE
    }
}
