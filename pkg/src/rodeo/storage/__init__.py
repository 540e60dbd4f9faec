from .design_file import DesignFile, read_design, save_design
from .records import dumps, read_records, records_frame, write_records
