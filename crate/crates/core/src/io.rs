//! Distance-matrix CSV files.
//!
//! The first record holds the labels. Each following record holds one row
//! of the table; a row may be prefixed by its own label, in which case the
//! header may start with an empty cell. Lines starting with `#` are ignored.

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::space::{validate_space, PseudometricSpace, ValidatedSpace};

pub fn parse_matrix_csv(text: &str) -> Result<(Vec<String>, Vec<Vec<Rational>>)> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut records = reader.records();
    let csv_error = |e: csv::Error| Error::Parse {
        position: e.position().map_or(0, |p| p.line() as usize),
        message: e.to_string(),
    };
    let header = match records.next() {
        Some(r) => r.map_err(csv_error)?,
        None => return Err(Error::EmptySpace),
    };
    let mut labels: Vec<String> = header.iter().map(str::to_string).collect();
    let row_labels = labels.first().is_some_and(String::is_empty);
    if row_labels {
        labels.remove(0);
    }
    if labels.iter().any(String::is_empty) {
        return Err(Error::Parse {
            position: 1,
            message: "empty label".into(),
        });
    }
    let n = labels.len();
    let mut table = Vec::with_capacity(n);
    for (i, record) in records.enumerate() {
        let record = record.map_err(csv_error)?;
        let line = record.position().map_or(i + 2, |p| p.line() as usize);
        let mut cells: Vec<&str> = record.iter().collect();
        if cells.iter().all(|c| c.is_empty()) {
            continue;
        }
        if row_labels || (cells.len() == n + 1 && table.len() < n && cells[0] == labels[table.len()]) {
            let expected = labels.get(table.len()).map(String::as_str);
            if Some(cells[0]) != expected {
                return Err(Error::Parse {
                    position: line,
                    message: format!("row label {:?} does not match {:?}", cells[0], expected),
                });
            }
            cells.remove(0);
        }
        let row = cells
            .iter()
            .map(|c| {
                rational::parse(c).map_err(|e| match e {
                    Error::Parse { message, .. } => Error::Parse {
                        position: line,
                        message,
                    },
                    other => other,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        table.push(row);
    }
    Ok((labels, table))
}

pub fn read_space(text: &str) -> Result<ValidatedSpace> {
    let (labels, table) = parse_matrix_csv(text)?;
    validate_space(labels, table)
}

pub fn write_matrix_csv(space: &PseudometricSpace) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(space.labels()).expect("in-memory write");
    for row in space.table() {
        writer
            .write_record(row.iter().map(rational::format))
            .expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::desk;
    use crate::rational::{int, ratio};

    #[test]
    fn reads_mixed_number_forms() {
        let (labels, table) = parse_matrix_csv("a,b,c\n0,1.5,3/2\n3/2,0,1\n1.5,1,0\n").unwrap();
        assert_eq!(labels, ["a", "b", "c"]);
        assert_eq!(table[0][1], ratio(3, 2));
        assert_eq!(table[0][2], ratio(3, 2));
        assert!(read_space("a,b,c\n0,1.5,3/2\n3/2,0,1\n1.5,1,0\n").unwrap().is_metric());
    }

    #[test]
    fn accepts_row_labels_and_comments() {
        let text = "# caption\n,a,b\na,0,4\nb,4,0\n";
        let (labels, table) = parse_matrix_csv(text).unwrap();
        assert_eq!(labels, ["a", "b"]);
        assert_eq!(table, vec![vec![int(0), int(4)], vec![int(4), int(0)]]);
    }

    #[test]
    fn round_trips_desk_space() {
        let cat = desk::caterpillar();
        let text = write_matrix_csv(&cat);
        let back = read_space(&text).unwrap();
        assert_eq!(back.space(), cat.as_pseudometric());
    }

    #[test]
    fn bad_cells_are_parse_errors() {
        let err = parse_matrix_csv("a,b\n0,x\n1,0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { position: 2, .. }), "{err:?}");
        assert!(read_space("a,b\n0,1\n").unwrap_err().is_parse());
    }
}
