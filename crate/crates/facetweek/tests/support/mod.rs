#![allow(dead_code)]

#[path = "../../../core/tests/support/oracle.rs"]
pub mod oracle;
pub mod service;
pub mod storage;

use chrono::NaiveDate;

pub fn date(y: i32, m: u32, d: u32) -> NaiveDate {
    NaiveDate::from_ymd_opt(y, m, d).unwrap()
}
