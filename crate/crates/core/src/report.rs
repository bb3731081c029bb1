//! Report serialization: a line-oriented human-readable text form and a
//! stable flattened key-value form. Field names and ordering are fixed, so
//! the structured rendering is byte-identical across runs for equal inputs.

use std::fmt;

/// An ordered key-value tree with string leaves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Kv {
    Leaf(String),
    Node(Vec<(String, Kv)>),
}

impl Kv {
    pub fn leaf(value: impl fmt::Display) -> Kv {
        Kv::Leaf(value.to_string())
    }

    pub fn node() -> Kv {
        Kv::Node(Vec::new())
    }

    /// Appends a child to a node; panics on leaves.
    pub fn push(&mut self, key: impl Into<String>, child: Kv) -> &mut Kv {
        match self {
            Kv::Node(children) => children.push((key.into(), child)),
            Kv::Leaf(_) => panic!("cannot push into a leaf"),
        }
        self
    }

    pub fn with(mut self, key: impl Into<String>, child: Kv) -> Kv {
        self.push(key, child);
        self
    }

    /// Indented `key: value` lines.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        self.text_into(&mut out, 0);
        out
    }

    fn text_into(&self, out: &mut String, indent: usize) {
        match self {
            Kv::Leaf(v) => {
                out.push_str(v);
                out.push('\n');
            }
            Kv::Node(children) => {
                for (key, child) in children {
                    for _ in 0..indent {
                        out.push_str("  ");
                    }
                    out.push_str(key);
                    match child {
                        Kv::Leaf(v) => {
                            out.push_str(": ");
                            out.push_str(v);
                            out.push('\n');
                        }
                        Kv::Node(_) => {
                            out.push_str(":\n");
                            child.text_into(out, indent + 1);
                        }
                    }
                }
            }
        }
    }

    /// Flattened `dotted.path = value` lines in tree order.
    pub fn render_structured(&self) -> String {
        let mut out = String::new();
        self.structured_into(&mut out, "");
        out
    }

    fn structured_into(&self, out: &mut String, prefix: &str) {
        match self {
            Kv::Leaf(v) => {
                out.push_str(prefix);
                out.push_str(" = ");
                out.push_str(v);
                out.push('\n');
            }
            Kv::Node(children) => {
                for (key, child) in children {
                    let path = if prefix.is_empty() {
                        key.clone()
                    } else {
                        format!("{prefix}.{key}")
                    };
                    child.structured_into(out, &path);
                }
            }
        }
    }
}
