//! Randomized super-Hirota identity suite.

use susy_gardner::verify;

fn main() -> susy_gardner::Result<()> {
    let report = verify::identity_suite(7, 1e-10)?;
    let (p, n) = verify::IdentityReport::count(&report.product_identity);
    let (ap, an) = verify::IdentityReport::count(&report.closed_forms);
    println!("product identity: {p}/{n}");
    println!("closed forms: {ap}/{an}");
    for check in report.closed_forms.iter().filter(|c| !c.pass) {
        println!("  failed: {} ({:.2e})", check.name, check.max_abs);
    }
    Ok(())
}
