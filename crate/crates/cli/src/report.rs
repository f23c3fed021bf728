use std::fs;
use std::io::Write;

use serde::Serialize;
use serde_json::Value;

use crate::{Cli, Format};
use cubehom::Error;

/// Exit status: 0 all unconditional checks passed, 1 input error, 2 an
/// unconditional invariant failed, 3 a budget or size limit was hit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok,
    Input,
    Violation,
    Budget,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Input => 1,
            Status::Violation => 2,
            Status::Budget => 3,
        }
    }

    pub fn from_error(e: &Error) -> Status {
        match e {
            Error::Internal(_) => Status::Violation,
            Error::Capability(_) => Status::Budget,
            _ => Status::Input,
        }
    }
}

/// What a command produced: a text body, a JSON body and an exit status.
/// Generated graph files bypass the report envelope.
pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub parameters: Value,
    pub status: Status,
    pub raw: bool,
}

impl Outcome {
    pub fn new(parameters: Value, text: String, json: impl Serialize, status: Status) -> Self {
        Outcome {
            text,
            json: serde_json::to_value(json).expect("report serializes"),
            parameters,
            status,
            raw: false,
        }
    }

    pub fn raw(text: String) -> Self {
        Outcome {
            text,
            json: Value::Null,
            parameters: Value::Null,
            status: Status::Ok,
            raw: true,
        }
    }
}

#[derive(Serialize)]
struct Envelope<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'a [String],
    seed: u64,
    budget: Option<u64>,
    parameters: &'a Value,
    exit_code: u8,
    result: &'a Value,
}

pub fn render(cli: &Cli, argv: &[String], outcome: &Outcome) -> String {
    if outcome.raw {
        return outcome.text.clone();
    }
    match cli.format {
        Format::Json => {
            let env = Envelope {
                tool: "cubehom",
                version: env!("CARGO_PKG_VERSION"),
                command: argv,
                seed: cli.seed,
                budget: cli.budget,
                parameters: &outcome.parameters,
                exit_code: outcome.status.code(),
                result: &outcome.json,
            };
            let mut s = serde_json::to_string_pretty(&env).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = format!(
                "cubehom {}\ncommand: {}\nseed: {}\n",
                env!("CARGO_PKG_VERSION"),
                argv.join(" "),
                cli.seed
            );
            if let Some(b) = cli.budget {
                s.push_str(&format!("budget: {b}\n"));
            }
            if let Value::Object(map) = &outcome.parameters {
                for (k, v) in map {
                    let v = match v {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    };
                    s.push_str(&format!("{k}: {v}\n"));
                }
            }
            s.push_str(&outcome.text);
            s.push_str(&format!("exit_code: {}\n", outcome.status.code()));
            s
        }
    }
}

pub fn emit(cli: &Cli, argv: &[String], outcome: &Outcome) -> cubehom::Result<()> {
    let text = render(cli, argv, outcome);
    match &cli.out {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}
