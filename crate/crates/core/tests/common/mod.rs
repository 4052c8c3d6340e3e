#![allow(dead_code)]

use rla_core::io::{parse, SourceFormat};
use rla_core::Election;

pub const ELECTION1: &str = include_str!("../../../../data/election1.json");
pub const ELECTION2: &str = include_str!("../../../../data/election2.json");
pub const ELECTION3: &str = include_str!("../../../../data/election3.json");
pub const ELECTION1_SOI: &str = include_str!("../../../../data/election1.soi");

pub fn load(text: &str) -> Election {
    parse(text, SourceFormat::Native).unwrap().election
}

pub fn elections() -> [Election; 3] {
    [load(ELECTION1), load(ELECTION2), load(ELECTION3)]
}

pub fn id(e: &Election, name: &str) -> rla_core::CandidateId {
    e.candidate_id(name).unwrap()
}
