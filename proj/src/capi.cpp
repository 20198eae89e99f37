extern "C" { const char* rth_version(void); } const char* rth_version(void){ return "0.0"; }
