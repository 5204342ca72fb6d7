mod support;

use support::*;

#[test]
fn margin_oracle_agrees_with_subset_enumeration() {
    for k in 1..=5 {
        assert_eq!(margin_optimum(k), box_optimum(k, k as i64), "k={k}");
    }
}

#[test]
fn gale_ryser_cases() {
    assert!(gale_ryser(&[2, 1], &[1, 1, 1]));
    assert!(!gale_ryser(&[3], &[2, 1]));
    assert!(!gale_ryser(&[3, 0], &[1, 1]));
    assert!(gale_ryser(&[2, 2], &[2, 2]));
    assert!(!gale_ryser(&[3, 1], &[2, 2]));
}

#[test]
fn naive_opt_small_cases() {
    let pts = vec![vec![0, 0], vec![0, 1], vec![5, 5], vec![1, 0]];
    assert_eq!(naive_opt(&pts, 2), 1);
    assert_eq!(naive_opt(&pts, 3), 4);
    assert_eq!(naive_opt(&pts, 4), direct_sum(&pts));
}

#[test]
fn compositions_count() {
    for k in 1..=8 {
        assert_eq!(compositions(k).len(), 1 << (k - 1));
        assert!(compositions(k).iter().all(|c| c.iter().sum::<u32>() == k as u32));
    }
}
