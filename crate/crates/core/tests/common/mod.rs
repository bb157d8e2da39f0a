#![allow(dead_code)]

use std::process::{Command, Output};

use num::integer::Integer;
use proptest::prelude::*;

use orbifold_rr::reid_rr::{Basket, BasketPoint, IndexMultiset};

pub fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_orbifold-rr"))
}

pub fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

pub fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

pub fn point() -> impl Strategy<Value = BasketPoint> {
    (2u32..=40, 1u32..40).prop_filter_map("b must be a unit mod r", |(r, b)| {
        let b = b % r;
        (b != 0 && b.gcd(&r) == 1).then(|| BasketPoint::normalized(i64::from(b), r).unwrap())
    })
}

pub fn basket() -> impl Strategy<Value = Basket> {
    prop::collection::vec(point(), 0..8).prop_map(Basket::from_points)
}

pub fn indices() -> impl Strategy<Value = IndexMultiset> {
    prop::collection::vec(2u32..=40, 0..8).prop_map(|v| IndexMultiset::from_indices(v).unwrap())
}
