import hashlib
import json
import logging
import sqlite3
from typing import Any, Dict, Optional

import pandas as pd

logger = logging.getLogger(__name__)


class ReportStore:
    def __init__(self, db_path: str = "curve_reports.db"):
        self.db_path = db_path
        self.init_database()

    def init_database(self):
        """Initialize the database with the reports table"""
        with sqlite3.connect(self.db_path) as conn:
            cursor = conn.cursor()

            cursor.execute('''
                CREATE TABLE IF NOT EXISTS reports (
                    id INTEGER PRIMARY KEY AUTOINCREMENT,
                    descriptor_hash TEXT NOT NULL UNIQUE,
                    command TEXT NOT NULL,
                    descriptor TEXT NOT NULL,
                    report TEXT NOT NULL,
                    feature_count INTEGER DEFAULT 0,
                    created_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP
                )
            ''')

            cursor.execute('CREATE INDEX IF NOT EXISTS idx_reports_command ON reports (command)')
            conn.commit()

    @staticmethod
    def calculate_descriptor_hash(command: str, descriptor: Dict[str, Any]) -> str:
        """SHA-256 of the command and its canonical descriptor JSON"""
        canonical = json.dumps({"command": command, "descriptor": descriptor}, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()

    def save_report(self, command: str, descriptor: Dict[str, Any], report: Dict[str, Any]) -> str:
        """Insert a report, replacing any earlier one for the same descriptor"""
        descriptor_hash = self.calculate_descriptor_hash(command, descriptor)
        feature_count = len(report.get("features", []))
        with sqlite3.connect(self.db_path) as conn:
            cursor = conn.cursor()
            try:
                cursor.execute('''
                    INSERT INTO reports (descriptor_hash, command, descriptor, report, feature_count)
                    VALUES (?, ?, ?, ?, ?)
                ''', (descriptor_hash, command, json.dumps(descriptor, sort_keys=True),
                      json.dumps(report, sort_keys=True), feature_count))
            except sqlite3.IntegrityError as e:
                if "UNIQUE constraint failed" not in str(e):
                    raise
                cursor.execute('''
                    UPDATE reports
                    SET report = ?, feature_count = ?, created_at = CURRENT_TIMESTAMP
                    WHERE descriptor_hash = ?
                ''', (json.dumps(report, sort_keys=True), feature_count, descriptor_hash))
            conn.commit()
        logger.info("stored %s report %s", command, descriptor_hash[:12])
        return descriptor_hash

    def get_report(self, command: str, descriptor: Dict[str, Any]) -> Optional[Dict[str, Any]]:
        """Get the cached report for a descriptor, or None"""
        descriptor_hash = self.calculate_descriptor_hash(command, descriptor)
        with sqlite3.connect(self.db_path) as conn:
            cursor = conn.cursor()
            cursor.execute('SELECT report FROM reports WHERE descriptor_hash = ?', (descriptor_hash,))
            row = cursor.fetchone()
        if row is None:
            logger.info("report cache miss %s", descriptor_hash[:12])
            return None
        logger.info("report cache hit %s", descriptor_hash[:12])
        return json.loads(row[0])

    def list_reports(self, command: Optional[str] = None) -> pd.DataFrame:
        """Stored reports, newest first"""
        query = 'SELECT descriptor_hash, command, feature_count, created_at FROM reports'
        params: tuple = ()
        if command is not None:
            query += ' WHERE command = ?'
            params = (command,)
        query += ' ORDER BY created_at DESC, id DESC'
        with sqlite3.connect(self.db_path) as conn:
            return pd.read_sql_query(query, conn, params=params)

    def get_stats(self) -> Dict[str, Any]:
        """Get database statistics"""
        with sqlite3.connect(self.db_path) as conn:
            cursor = conn.cursor()

            cursor.execute('SELECT COUNT(*), COALESCE(SUM(feature_count), 0) FROM reports')
            report_count, feature_count = cursor.fetchone()

            cursor.execute('SELECT command, COUNT(*) FROM reports GROUP BY command ORDER BY command')
            by_command = {row[0]: row[1] for row in cursor.fetchall()}

            return {
                'total_reports': report_count,
                'total_features': feature_count,
                'reports_by_command': by_command,
            }

    def clear(self):
        """Delete every stored report"""
        with sqlite3.connect(self.db_path) as conn:
            conn.execute('DELETE FROM reports')
            conn.commit()
