use zetarules::special_functions::critical_line_normalized;
use zetarules::zero_finder::{
    count_check, first_n_zeros, predicted_count, real_axis_zeros_tminus, refine_zero, scan_zeros, scan_zeros_default,
    with_real_axis_zeros, LocationKind,
};
use zetarules::{Error, FunctionId};

// zeta zero ordinates from mpmath
const XI_ZEROS: [f64; 3] = [14.134_725_141_734_694, 21.022_039_638_771_555, 25.010_857_580_145_69];

#[test]
fn first_xi_zeros() {
    let ds = scan_zeros(FunctionId::Xi, 10.0, 30.0, 0.05).unwrap();
    let t = ds.ordinates();
    assert_eq!(t.len(), 3);
    for (a, b) in t.iter().zip(XI_ZEROS) {
        assert!((a - b).abs() < 1e-10, "{a} vs {b}");
    }
    for r in &ds.records {
        assert!(r.residual <= 1e-9);
        assert_eq!(r.location_kind, LocationKind::CriticalLine);
    }
    assert_eq!(ds.records.iter().map(|r| r.index).collect::<Vec<_>>(), vec![1, 2, 3]);
}

#[test]
fn hundredth_and_thousandth_xi_zero() {
    let ds = first_n_zeros(FunctionId::Xi, 1000).unwrap();
    let t = ds.ordinates();
    assert!((t[99] - 236.524_229_665_816_2).abs() < 1e-9);
    assert!((t[999] - 1419.422_480_945_995_7).abs() < 1e-9);
}

#[test]
fn refine_contract() {
    let r = refine_zero(FunctionId::Xi, (14.0, 14.3)).unwrap();
    assert!((r.t_or_x - XI_ZEROS[0]).abs() < 1e-10);
    assert!(r.residual <= 1e-9);
    assert!(matches!(
        refine_zero(FunctionId::Xi, (15.0, 16.0)),
        Err(Error::NoSignChange { .. })
    ));
    // two zeros inside the bracket: the lower one comes back
    let r = refine_zero(FunctionId::Xi, (13.0, 22.0)).unwrap();
    assert!((r.t_or_x - XI_ZEROS[0]).abs() < 1e-10, "{}", r.t_or_x);
}

#[test]
fn residuals_are_small_at_every_zero() {
    for f in [FunctionId::TPlus, FunctionId::TMinus, FunctionId::L4Completed] {
        let ds = scan_zeros_default(f, 0.0, 300.0).unwrap();
        assert!(!ds.records.is_empty());
        for r in &ds.records {
            assert!(r.residual <= 1e-9, "{f} at {}", r.t_or_x);
            let v = critical_line_normalized(f, r.t_or_x).unwrap();
            assert!(v.abs() <= 1e-9);
        }
    }
}

#[test]
fn t_plus_and_t_minus_interlace_to_1000() {
    let p = scan_zeros_default(FunctionId::TPlus, 0.0, 1000.0).unwrap().ordinates();
    let m = scan_zeros_default(FunctionId::TMinus, 0.0, 1000.0).unwrap().ordinates();
    let mut merged: Vec<(f64, bool)> = p.iter().map(|&t| (t, true)).chain(m.iter().map(|&t| (t, false))).collect();
    merged.sort_by(|a, b| a.0.total_cmp(&b.0));
    for w in merged.windows(2) {
        assert_ne!(w[0].1, w[1].1, "no alternation near t = {}", w[0].0);
    }
    // low-range check on the short grid
    let lo_m = scan_zeros(FunctionId::TMinus, 0.1, 50.0, 0.02).unwrap().ordinates();
    let lo_p: Vec<f64> = p.iter().copied().filter(|&t| t < 50.0).collect();
    assert!(lo_m.len().abs_diff(lo_p.len()) <= 1);
}

#[test]
fn t_plus_count_to_1000() {
    let ds = scan_zeros_default(FunctionId::TPlus, 0.0, 1000.0).unwrap();
    let (observed, predicted) = count_check(&ds);
    assert!((predicted - 1516.1).abs() < 0.1);
    assert!(observed.abs_diff(1517) <= 2, "{observed}");
    assert!(ds.warnings.is_empty());
    let last = ds.ordinates().last().copied().unwrap();
    assert!(last > 999.0 && last < 1000.0, "{last}");
}

#[test]
fn empty_range_count() {
    let ds = scan_zeros_default(FunctionId::TPlus, 0.0, 0.0).unwrap();
    assert_eq!(count_check(&ds), (0, 0.0));
    assert_eq!(predicted_count(FunctionId::Xi, 0.0), 0.0);
}

#[test]
fn scans_join_at_grid_boundaries() {
    let whole = scan_zeros(FunctionId::Xi, 0.0, 200.0, 0.02).unwrap().ordinates();
    let mut parts = scan_zeros(FunctionId::Xi, 0.0, 100.0, 0.02).unwrap().ordinates();
    parts.extend(scan_zeros(FunctionId::Xi, 100.0, 200.0, 0.02).unwrap().ordinates());
    assert_eq!(whole.len(), parts.len());
    for (a, b) in whole.iter().zip(&parts) {
        assert!((a - b).abs() < 1e-10);
    }
}

#[test]
fn real_axis_zeros() {
    let (a, b) = real_axis_zeros_tminus().unwrap();
    assert!((a.t_or_x - 3.91231).abs() <= 1e-5, "{}", a.t_or_x);
    assert!((b.t_or_x + 2.91231).abs() <= 1e-5, "{}", b.t_or_x);
    assert!((a.t_or_x + b.t_or_x - 1.0).abs() <= 1e-9);
    assert_eq!(a.location_kind, LocationKind::RealAxis);
    let ds = with_real_axis_zeros(&first_n_zeros(FunctionId::TMinus, 5).unwrap()).unwrap();
    assert_eq!(ds.real_axis().count(), 2);
    assert!(with_real_axis_zeros(&first_n_zeros(FunctionId::TPlus, 5).unwrap()).is_err());
}

#[test]
fn bad_requests() {
    assert!(matches!(scan_zeros(FunctionId::L4, 0.0, 10.0, 0.1), Err(Error::Domain(_))));
    assert!(matches!(scan_zeros(FunctionId::Xi, 0.0, 10.0, 0.0), Err(Error::Domain(_))));
    assert!(matches!(scan_zeros(FunctionId::Xi, 10.0, 0.0, 0.1), Err(Error::Domain(_))));
}

#[test]
fn scans_are_deterministic() {
    let a = scan_zeros_default(FunctionId::TMinus, 0.0, 200.0).unwrap();
    let b = scan_zeros_default(FunctionId::TMinus, 0.0, 200.0).unwrap();
    assert_eq!(a, b);
}
