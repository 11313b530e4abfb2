use std::fs;
use std::path::Path;

use crate::error::CliError;

/// Writes `contents` to a temporary sibling and renames it over `path`, so
/// readers never see a partial file.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = Path::new(&tmp);
    fs::write(tmp, contents).map_err(|e| CliError::io(tmp, e))?;
    fs::rename(tmp, path).map_err(|e| CliError::io(path, e))
}

/// CSV text whose first line is a `# config_fingerprint: …` comment.
pub fn csv_document<I, R>(fingerprint: &str, header: &[&str], rows: I) -> String
where
    I: IntoIterator<Item = R>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    let body = String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields");
    format!("# config_fingerprint: {fingerprint}\n{body}")
}

/// Shortest text that parses back to the same value.
pub fn num(v: f64) -> String {
    format!("{v}")
}

/// Reads CSV produced by [`csv_document`], skipping the fingerprint line.
pub fn csv_reader(src: &str) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(src.as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn document_has_fingerprint_then_header() {
        let doc = csv_document("abc", &["a", "b"], [["1", "x,y"]]);
        assert_eq!(doc, "# config_fingerprint: abc\na,b\n1,\"x,y\"\n");
        let mut r = csv_reader(&doc);
        let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
        assert_eq!(&rows[0][1], "x,y");
    }

    #[test]
    fn atomic_write_replaces_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("sub/out.txt");
        write_atomic(&p, b"one").unwrap();
        write_atomic(&p, b"two").unwrap();
        assert_eq!(fs::read_to_string(&p).unwrap(), "two");
        assert_eq!(fs::read_dir(p.parent().unwrap()).unwrap().count(), 1);
    }
}
