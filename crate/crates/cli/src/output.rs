use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::args::Format;

/// One output row. `FIELDS` is the CSV header and lists the serialized field
/// names in order.
pub trait Record: Serialize {
    const KIND: &'static str;
    const FIELDS: &'static [&'static str];
    fn plain(&self, out: &mut dyn Write) -> io::Result<()>;
}

enum Sink {
    Json(Box<dyn Write>),
    Plain(Box<dyn Write>),
    /// CSV tables, one per record kind, separated by a blank line.
    Csv(Option<Box<csv::Writer<Box<dyn Write>>>>, Option<&'static str>),
}

pub struct Emitter {
    sink: Sink,
}

impl Emitter {
    pub fn open(format: Format, path: Option<&Path>) -> io::Result<Self> {
        let out: Box<dyn Write> = match path {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        };
        Ok(Self::new(format, out))
    }

    pub fn new(format: Format, out: Box<dyn Write>) -> Self {
        let sink = match format {
            Format::JsonLines => Sink::Json(out),
            Format::Plain => Sink::Plain(out),
            Format::Csv => Sink::Csv(Some(csv_writer(out)), None),
        };
        Self { sink }
    }

    /// The underlying writer for plain text that is not row shaped.
    pub fn plain_writer(&mut self) -> Option<&mut dyn Write> {
        match &mut self.sink {
            Sink::Plain(w) => Some(w),
            _ => None,
        }
    }

    pub fn emit<R: Record>(&mut self, record: &R) -> io::Result<()> {
        match &mut self.sink {
            Sink::Json(out) => {
                serde_json::to_writer(&mut *out, record)?;
                out.write_all(b"\n")
            }
            Sink::Plain(out) => record.plain(out),
            Sink::Csv(slot, section) => {
                if *section != Some(R::KIND) {
                    if section.is_some() {
                        let w = slot.take().expect("writer present between calls");
                        let mut out = w.into_inner().map_err(|e| e.into_error())?;
                        out.write_all(b"\n")?;
                        *slot = Some(csv_writer(out));
                    }
                    let w = slot.as_mut().expect("writer present between calls");
                    w.write_record(R::FIELDS).map_err(csv_error)?;
                    *section = Some(R::KIND);
                }
                let w = slot.as_mut().expect("writer present between calls");
                w.serialize(record).map_err(csv_error)
            }
        }
    }

    pub fn finish(self) -> io::Result<()> {
        match self.sink {
            Sink::Json(mut out) | Sink::Plain(mut out) => out.flush(),
            Sink::Csv(Some(mut w), _) => w.flush(),
            Sink::Csv(None, _) => Ok(()),
        }
    }
}

fn csv_writer(out: Box<dyn Write>) -> Box<csv::Writer<Box<dyn Write>>> {
    Box::new(csv::WriterBuilder::new().has_headers(false).from_writer(out))
}

fn csv_error(e: csv::Error) -> io::Error {
    match e.into_kind() {
        csv::ErrorKind::Io(e) => e,
        other => io::Error::new(io::ErrorKind::InvalidData, format!("{other:?}")),
    }
}
