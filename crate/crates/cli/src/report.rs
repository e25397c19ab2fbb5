//! Output records. Each command produces records made of [`Item`]s; the
//! same record renders either as indented text or as one JSON object.

use std::io::{self, Write};

use num_traits::ToPrimitive;
use pclosure::ideals::{Cut, PrimeCut};
use pclosure::lexgroup::{GroupElement, LexVec};
use pclosure::pcvseq::{Classification, OutsideReason};
use pclosure::regbasis::OracleOutcome;
use serde_json::{json, Map, Value};

#[derive(Clone, Debug)]
pub enum Item {
    Str(String),
    Int(i64),
    Bool(bool),
    Val(GroupElement),
    /// Tagged union: `Name(arg, ...)` in text, `{"tag": Name, ...}` in JSON.
    Tag(String, Vec<(String, Item)>),
    List(Vec<Item>),
    Obj(Vec<(String, Item)>),
}

impl Item {
    pub fn str(s: impl ToString) -> Self {
        Item::Str(s.to_string())
    }

    pub fn int(n: usize) -> Self {
        Item::Int(n as i64)
    }

    pub fn vec(v: &LexVec) -> Self {
        Item::Val(GroupElement::Finite(v.clone()))
    }

    pub fn tag(name: &str, args: Vec<(&str, Item)>) -> Self {
        Item::Tag(
            name.to_string(),
            args.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        )
    }

    pub fn obj(fields: Vec<(&str, Item)>) -> Self {
        Item::Obj(
            fields
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
        )
    }

    pub fn classification(c: &Classification) -> Self {
        match c {
            Classification::PseudoLimit => Item::tag("PseudoLimit", vec![]),
            Classification::Coset(k) => Item::tag("Coset", vec![("k", Item::int(*k))]),
            Classification::Outside(r) => {
                let (name, k) = match r {
                    OutsideReason::GaugeUndershoot(k) => ("GaugeUndershoot", k),
                    OutsideReason::CosetPrimeFail(k) => ("CosetPrimeFail", k),
                    OutsideReason::GaugeMismatch(k) => ("GaugeMismatch", k),
                };
                Item::tag(
                    "Outside",
                    vec![("reason", Item::tag(name, vec![("k", Item::int(*k))]))],
                )
            }
        }
    }

    pub fn cut(c: &Cut) -> Self {
        match c.canonical() {
            Cut::Zero => Item::tag("Zero", vec![]),
            Cut::ClosedPrincipal(theta) => {
                Item::tag("ClosedPrincipal", vec![("theta", Item::vec(&theta))])
            }
            Cut::OpenCoset { theta, j } => Item::tag(
                "OpenCoset",
                vec![("theta", Item::vec(&theta)), ("j", Item::int(j))],
            ),
        }
    }

    pub fn prime(p: &PrimeCut) -> Self {
        Item::tag("Prime", vec![("j", Item::int(p.j()))])
    }

    pub fn oracle(out: &OracleOutcome) -> Self {
        match out {
            OracleOutcome::Pass => Item::tag("Pass", vec![]),
            OracleOutcome::Fail { n, valuation } => Item::tag(
                "Fail",
                vec![("n", Item::int(*n)), ("valuation", Item::vec(valuation))],
            ),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Item::Str(s) => Value::String(s.clone()),
            Item::Int(n) => json!(n),
            Item::Bool(b) => json!(b),
            Item::Val(GroupElement::Infinity) => Value::String("inf".into()),
            Item::Val(GroupElement::Finite(v)) => Value::Array(
                v.coords()
                    .iter()
                    .map(|c| match c.to_i64() {
                        Some(n) => json!(n),
                        None => Value::String(c.to_string()),
                    })
                    .collect(),
            ),
            Item::Tag(name, args) => {
                let mut m = Map::new();
                m.insert("tag".into(), Value::String(name.clone()));
                for (k, v) in args {
                    m.insert(k.clone(), v.to_json());
                }
                Value::Object(m)
            }
            Item::List(items) => Value::Array(items.iter().map(Item::to_json).collect()),
            Item::Obj(fields) => Value::Object(
                fields
                    .iter()
                    .map(|(k, v)| (k.clone(), v.to_json()))
                    .collect(),
            ),
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            Item::Str(s) => s.clone(),
            Item::Int(n) => n.to_string(),
            Item::Bool(b) => b.to_string(),
            Item::Val(g) => g.to_string(),
            Item::Tag(name, args) if name == "Prime" => format!("P_{}", args[0].1.to_text()),
            Item::Tag(name, args) if args.is_empty() => name.clone(),
            Item::Tag(name, args) => {
                let inner: Vec<String> = args.iter().map(|(_, v)| v.to_text()).collect();
                format!("{name}({})", inner.join(", "))
            }
            Item::List(items) => {
                let inner: Vec<String> = items.iter().map(Item::to_text).collect();
                format!("[{}]", inner.join(", "))
            }
            Item::Obj(fields) => {
                let inner: Vec<String> = fields
                    .iter()
                    .map(|(k, v)| format!("{k}={}", v.to_text()))
                    .collect();
                inner.join("  ")
            }
        }
    }
}

pub struct Record {
    pub command: String,
    pub verdict: Item,
    pub fields: Vec<(String, Item)>,
    /// Render on a single line in text mode.
    pub inline: bool,
}

impl Record {
    pub fn new(command: &str, verdict: Item) -> Self {
        Record {
            command: command.to_string(),
            verdict,
            fields: Vec::new(),
            inline: false,
        }
    }

    pub fn inline(mut self) -> Self {
        self.inline = true;
        self
    }

    pub fn field(mut self, key: &str, value: Item) -> Self {
        self.fields.push((key.to_string(), value));
        self
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), Value::String(self.command.clone()));
        m.insert("verdict".into(), self.verdict.to_json());
        for (k, v) in &self.fields {
            m.insert(k.clone(), v.to_json());
        }
        Value::Object(m)
    }

    pub fn to_text(&self) -> String {
        if self.inline {
            let mut line = format!("{}: {}", self.command, self.verdict.to_text());
            for (k, v) in &self.fields {
                line.push_str(&format!("  {k}={}", v.to_text()));
            }
            return line + "\n";
        }
        let mut out = format!("{}: {}\n", self.command, self.verdict.to_text());
        for (k, v) in &self.fields {
            match v {
                Item::List(items) if items.iter().any(|i| matches!(i, Item::Obj(_))) => {
                    out.push_str(&format!("  {k}:\n"));
                    for i in items {
                        out.push_str(&format!("    - {}\n", i.to_text()));
                    }
                }
                _ => out.push_str(&format!("  {k} = {}\n", v.to_text())),
            }
        }
        out
    }
}

pub fn emit(records: &[Record], json_mode: bool) -> io::Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for r in records {
        if json_mode {
            writeln!(out, "{}", r.to_json())?;
        } else {
            write!(out, "{}", r.to_text())?;
        }
    }
    out.flush()
}
