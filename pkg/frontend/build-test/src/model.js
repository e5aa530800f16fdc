// Payload shapes mirrored from the review API. The console never mutates
// evidence fields; everything it displays comes verbatim from these records.
export {};
