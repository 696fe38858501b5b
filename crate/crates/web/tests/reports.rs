use fanspec_web::{
    analyze, analyze_report, construct, construction_report, split_profile, split_profile_report,
};

#[test]
fn split_profile_agrees_three_ways() {
    let p = split_profile_report(10, 2).unwrap();
    // (n + 2k - 2 + sqrt((n + 2k - 2)^2 - 8k(k - 1))) / 2 at n = 10, k = 2
    let expected = (12.0 + 128f64.sqrt()) / 2.0;
    assert!((p.closed_form - expected).abs() < 1e-12);
    assert!((p.eigensolver - expected).abs() < 1e-9);
    assert!((p.quotient_top - expected).abs() < 1e-9);
    assert!(p.equitable);
    assert!(p.lower_bound.unwrap() <= p.closed_form);
    assert_eq!(p.drawing.groups.iter().filter(|&&g| g == 1).count(), 2);
    assert!(split_profile_report(3, 2).unwrap().lower_bound.is_some());
    assert!(split_profile_report(10, 5).unwrap().lower_bound.is_none());
}

#[test]
fn analyze_reports_fan_witness() {
    let a = analyze_report("D{c", 2).unwrap();
    let w = a.fan.expect("the bowtie is F_2");
    assert_eq!(w.center, 0);
    assert_eq!(a.drawing.highlight.len(), 6);
    let c5 = analyze_report("Dhc\n", 2).unwrap();
    assert!(c5.fan.is_none());
    assert_eq!(c5.merris, Some(4.0));
    assert!((c5.q1 - 4.0).abs() < 1e-12);
}

#[test]
fn construction_groups_sides() {
    let c = construction_report(12, 2).unwrap();
    assert_eq!(c.e, c.efgg_value);
    assert_eq!(c.drawing.groups.iter().filter(|&&g| g == 0).count(), 6);
    assert_eq!(c.drawing.groups.iter().filter(|&&g| g == 1).count(), 3);
    assert_eq!(c.drawing.highlight.len(), c.spec.embedded.edges);
    assert!(construction_report(65, 2).is_err());
}

#[test]
fn exports_return_json_or_message() {
    let v: serde_json::Value = serde_json::from_str(&split_profile(8, 2).unwrap()).unwrap();
    assert_eq!(v["n"], 8);
    let v: serde_json::Value = serde_json::from_str(&construct(9, 1).unwrap()).unwrap();
    assert_eq!(v["e"], 20);
    assert!(analyze("not graph6", 1).unwrap_err().contains("graph6"));
    assert!(split_profile(2, 2).is_err());
}
