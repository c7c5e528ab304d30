//! Expensive counts, run with `cargo test --release -- --ignored`.

use k3weyl_core::surface::build_example_quartic;
use k3weyl_core::zeta::{count_points_with, CountOptions};

#[test]
#[ignore = "about 1e10 evaluations; run explicitly"]
fn example_over_f_3_7() {
    let opts = CountOptions::default().long(true);
    let rec = count_points_with(&build_example_quartic(), 3, 7, &opts).unwrap();
    assert_eq!(rec.count, 4_804_401);
}
