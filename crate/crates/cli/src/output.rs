//! Output plumbing: results go to stdout (text or JSON), progress notes to
//! stderr unless `--quiet`.

pub enum OutputMode {
    Text,
    Json,
}

pub struct Printer {
    mode: OutputMode,
    quiet: bool,
}

impl Printer {
    pub fn new(mode: OutputMode, quiet: bool) -> Self {
        Printer { mode, quiet }
    }

    /// Progress chatter; suppressed with `--quiet`.
    pub fn note(&self, line: &str) {
        if !self.quiet {
            eprintln!("{}", line);
        }
    }

    /// The command result: pretty JSON in JSON mode, otherwise the rendered
    /// text form.
    pub fn result(&self, value: &serde_json::Value, text: impl Fn(&serde_json::Value) -> String) {
        match self.mode {
            OutputMode::Json => {
                println!(
                    "{}",
                    serde_json::to_string_pretty(value).expect("serialization cannot fail")
                )
            }
            OutputMode::Text => println!("{}", text(value)),
        }
    }

    /// Like [`Printer::result`] but with a pre-rendered JSON payload.
    pub fn result_raw(&self, json: &str, text: impl Fn(&str) -> String) {
        match self.mode {
            OutputMode::Json => println!("{}", json),
            OutputMode::Text => println!("{}", text(json)),
        }
    }
}
