# largest supported |m|
MAX_ORDER = 200
