//! placeholder
use clap::Parser;

#[derive(Parser)]
pub struct Cli {}

pub fn run(_cli: Cli) -> i32 {
    0
}
