from qloc.utils import parallel, text, time
