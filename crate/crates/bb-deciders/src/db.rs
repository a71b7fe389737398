//! Seed database files: a 30-byte header followed by fixed 30-byte machine
//! records (5 states x 2 read symbols x 3 bytes: write, move, next-state).

use std::fs;
use std::io;
use std::path::Path;

use thiserror::Error;

use crate::machine::{Dir, Transition, TransitionTable};

pub const HEADER_SIZE: usize = 30;
pub const RECORD_SIZE: usize = 30;

#[derive(Debug, Error)]
pub enum DbError {
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("file size {size} is not a header plus whole records")]
    BadSize { size: usize },
    #[error("record {index} out of range (database holds {count})")]
    OutOfRange { index: usize, count: usize },
    #[error("byte {offset} of record has invalid value {value}")]
    BadByte { offset: usize, value: u8 },
    #[error("record must be exactly {RECORD_SIZE} bytes, got {0}")]
    BadRecordLength(usize),
}

/// Decode one 30-byte record. `move_one_is_left` selects the move-bit
/// polarity (the default convention: 0 = R, 1 = L). A next-state byte of 0
/// marks the transition undefined; 1..=5 map to states A..E.
pub fn decode_db_record(bytes: &[u8], move_one_is_left: bool) -> Result<TransitionTable, DbError> {
    if bytes.len() != RECORD_SIZE {
        return Err(DbError::BadRecordLength(bytes.len()));
    }
    let mut entries = Vec::with_capacity(10);
    for slot in 0..10 {
        let offset = slot * 3;
        let (write, movement, next) = (bytes[offset], bytes[offset + 1], bytes[offset + 2]);
        if write > 1 {
            return Err(DbError::BadByte { offset, value: write });
        }
        if movement > 1 {
            return Err(DbError::BadByte { offset: offset + 1, value: movement });
        }
        if next > 5 {
            return Err(DbError::BadByte { offset: offset + 2, value: next });
        }
        if next == 0 {
            entries.push(None);
        } else {
            let left_bit = u8::from(move_one_is_left);
            let dir = if movement == left_bit { Dir::L } else { Dir::R };
            entries.push(Some(Transition { write, dir, next: next - 1 }));
        }
    }
    Ok(TransitionTable::new(entries))
}

/// Encode a machine of at most 5 states; missing rows encode as undefined.
pub fn encode_db_record(table: &TransitionTable, move_one_is_left: bool) -> [u8; RECORD_SIZE] {
    assert!(table.states() <= 5, "database records hold at most 5 states");
    let mut bytes = [0u8; RECORD_SIZE];
    for state in 0..table.states() as u8 {
        for read in 0..2u8 {
            let offset = (state as usize * 2 + read as usize) * 3;
            if let Some(tr) = table.entry(state, read) {
                let left_bit = u8::from(move_one_is_left);
                bytes[offset] = tr.write;
                bytes[offset + 1] = if tr.dir == Dir::L { left_bit } else { 1 - left_bit };
                bytes[offset + 2] = tr.next + 1;
            }
        }
    }
    bytes
}

/// An in-memory seed database.
#[derive(Debug, Clone)]
pub struct SeedDatabase {
    data: Vec<u8>,
    pub move_one_is_left: bool,
}

impl SeedDatabase {
    pub fn open(path: &Path) -> Result<SeedDatabase, DbError> {
        SeedDatabase::from_bytes(fs::read(path)?)
    }

    pub fn from_bytes(data: Vec<u8>) -> Result<SeedDatabase, DbError> {
        if data.len() < HEADER_SIZE || !(data.len() - HEADER_SIZE).is_multiple_of(RECORD_SIZE) {
            return Err(DbError::BadSize { size: data.len() });
        }
        Ok(SeedDatabase { data, move_one_is_left: true })
    }

    pub fn count(&self) -> usize {
        (self.data.len() - HEADER_SIZE) / RECORD_SIZE
    }

    pub fn record(&self, index: usize) -> Result<&[u8], DbError> {
        if index >= self.count() {
            return Err(DbError::OutOfRange { index, count: self.count() });
        }
        let start = HEADER_SIZE + index * RECORD_SIZE;
        Ok(&self.data[start..start + RECORD_SIZE])
    }

    pub fn machine(&self, index: usize) -> Result<TransitionTable, DbError> {
        decode_db_record(self.record(index)?, self.move_one_is_left)
    }
}
