//! Friedman, Iman-Davenport and Holm on a small result matrix.

use seedhawk::stats::{friedman_report, ResultMatrix};

const TABLE: &str = "problem,A,B,C,D
p1,0.91,0.88,0.80,0.85
p2,0.75,0.74,0.70,0.69
p3,0.62,0.60,0.61,0.55
p4,0.83,0.79,0.78,0.80
p5,0.95,0.90,0.91,0.89
";

fn main() -> seedhawk::Result<()> {
    let m = ResultMatrix::from_csv(TABLE.as_bytes(), true)?;
    let report = friedman_report(&m)?;
    for (name, r) in report.methods.iter().zip(&report.average_ranks) {
        println!("{name}: average rank {r:.2}");
    }
    println!("chi2 {:.3} (p {:.4})", report.chi2, report.chi2_p);
    println!("F_ID {:.3} (p {:.4})", report.iman_davenport, report.iman_davenport_p);
    println!("control {}", report.control);
    for row in &report.holm {
        println!(
            "  {:<3} z {:>6.3}  p {:.4}  APV {:.4}",
            row.method, row.z, row.p_value, row.adjusted
        );
    }
    Ok(())
}
