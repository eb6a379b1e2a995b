use std::fmt::Write as _;

use clap::ValueEnum;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Records,
}

/// Output assembled before anything is written, so failures never leave
/// partial reports behind.
pub struct Report {
    format: Format,
    body: String,
}

fn clean(value: &str) -> String {
    value.split_whitespace().collect::<Vec<_>>().join("_")
}

impl Report {
    pub fn new(format: Format, command: &str, digest: &str) -> Self {
        let mut r = Report { format, body: String::new() };
        match format {
            Format::Text => r.text(format!("# {command}  inputs sha256:{digest}")),
            Format::Records => r.record(&[("command", command.to_string()), ("inputs", digest.to_string())]),
        }
        r
    }

    /// A line shown only in text mode.
    pub fn text(&mut self, line: impl AsRef<str>) {
        if self.format == Format::Text {
            let _ = writeln!(self.body, "{}", line.as_ref());
        }
    }

    /// A `key=value` line shown only in records mode.
    pub fn record(&mut self, fields: &[(&str, String)]) {
        if self.format == Format::Records {
            let line: Vec<String> = fields.iter().map(|(k, v)| format!("{k}={}", clean(v))).collect();
            let _ = writeln!(self.body, "{}", line.join(" "));
        }
    }

    /// The same fact in both modes.
    pub fn both(&mut self, line: impl AsRef<str>, fields: &[(&str, String)]) {
        self.text(line);
        self.record(fields);
    }

    /// Verbatim text, e.g. a generated file, in both modes.
    pub fn raw(&mut self, text: &str) {
        self.body.push_str(text);
    }

    pub fn finish(self) -> String {
        self.body
    }
}
