//! Icon artwork, emitted once per document as `<symbol>` elements on a
//! 24×24 grid and filled with the even-odd rule.

use alloc::string::String;

pub const CHECK: &str = "check";
pub const AVOID: &str = "avoid";
pub const SCHOOL_ATTENDED: &str = "school-attended";
pub const SCHOOL_ABSENT: &str = "school-absent";

const HOUSE: &str = "M3 12L12 3L21 12H18.5V21H5.5V12Z";
const PERSON: &str = "M12 6m-3 0a3 3 0 1 0 6 0a3 3 0 1 0-6 0M5 21Q12 8 19 21Z";
const BUILDING: &str = "M12 2L23 8H1ZM3 9H21V21H3ZM10 14H14V21H10Z";
const CROSS: &str = "M9 3H15V9H21V15H15V21H9V15H3V9H9Z";

pub const SYMBOLS: &[(&str, &str)] = &[
    (CHECK, "M3 12.5L5.5 10L10 14.5L18.5 6L21 8.5L10 19.5Z"),
    (
        AVOID,
        "M2 16A10 10 0 0 1 22 16H24L20.5 21L17 16H19.2A7.2 7.2 0 0 0 4.8 16Z\
         M12 16m-3.5 0a3.5 3.5 0 1 0 7 0a3.5 3.5 0 1 0-7 0",
    ),
    ("target-family", HOUSE),
    (
        "target-friends",
        "M8 8m-3 0a3 3 0 1 0 6 0a3 3 0 1 0-6 0M16 8m-3 0a3 3 0 1 0 6 0a3 3 0 1 0-6 0\
         M2 21Q8 10 14 21ZM10 21Q16 10 22 21Z",
    ),
    ("target-strangers", PERSON),
    ("target-school", BUILDING),
    ("target-sports", "M12 12m-9 0a9 9 0 1 0 18 0a9 9 0 1 0-18 0M12 12m-3 0a3 3 0 1 0 6 0a3 3 0 1 0-6 0"),
    ("target-health", CROSS),
    (SCHOOL_ATTENDED, BUILDING),
    ("school-weekend", "M3 5H21V21H3ZM5 9H19V19H5ZM7 2H9V6H7ZM15 2H17V6H15Z"),
    ("school-holiday", "M12 2L14.9 8.6L22 9.2L16.6 13.9L18.2 21L12 17.3L5.8 21L7.4 13.9L2 9.2L9.1 8.6Z"),
    (
        "school-vacation",
        "M12 12m-5 0a5 5 0 1 0 10 0a5 5 0 1 0-10 0M11 1H13V4H11ZM11 20H13V23H11ZM1 11H4V13H1ZM20 11H23V13H20Z",
    ),
    ("school-pain", "M13 2L4 14H11L9 22L20 9H13Z"),
    ("school-sick", "M10 3a2 2 0 0 1 4 0V14a4 4 0 1 1-4 0Z"),
    (
        "school-medical-appointment",
        "M12 12m-10 0a10 10 0 1 0 20 0a10 10 0 1 0-20 0M10 6H14V10H18V14H14V18H10V14H6V10H10Z",
    ),
    ("school-home-schooled", "M3 12L12 3L21 12H18.5V21H5.5V12ZM10 15H14V21H10Z"),
    ("school-online", "M2 4H22V17H2ZM4 6H20V15H4ZM9 19H15V21H9Z"),
    (
        SCHOOL_ABSENT,
        "M12 12m-9 0a9 9 0 1 0 18 0a9 9 0 1 0-18 0M12 12m-6.5 0a6.5 6.5 0 1 0 13 0a6.5 6.5 0 1 0-13 0",
    ),
];

fn slug(label: &str) -> String {
    label.chars().map(|c| if c.is_ascii_alphanumeric() { c.to_ascii_lowercase() } else { '-' }).collect()
}

pub fn worry_target(label: &str) -> String {
    alloc::format!("target-{}", slug(label))
}

pub fn school_reason(label: &str) -> String {
    alloc::format!("school-{}", slug(label))
}

pub fn is_known(symbol: &str) -> bool {
    SYMBOLS.iter().any(|(id, _)| *id == symbol)
}
