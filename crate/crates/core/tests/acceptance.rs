use std::io::Write;

use crossgeo::acceptance::{run_criterion, AcceptanceOptions};

fn check(id: usize) {
    let c = run_criterion(id, &AcceptanceOptions { timing: true, ..AcceptanceOptions::default() });
    // Direct write: the PASS/FAIL line should show even when libtest captures output.
    writeln!(std::io::stderr(), "{}", c.line()).unwrap();
    assert!(c.passed, "{c:#?}");
}


#[test]
fn criterion_01() {
    check(1);
}

#[test]
fn criterion_02() {
    check(2);
}

#[test]
fn criterion_03() {
    check(3);
}

#[test]
fn criterion_04() {
    check(4);
}

#[test]
fn criterion_05() {
    check(5);
}

#[test]
fn criterion_06() {
    check(6);
}

#[test]
fn criterion_07() {
    check(7);
}

#[test]
fn criterion_08() {
    check(8);
}

#[test]
fn criterion_09() {
    check(9);
}

#[test]
fn criterion_10() {
    check(10);
}
