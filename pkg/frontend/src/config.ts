/** Build-time default for the API base URL; a host page can override it
 * by setting window.TRACKRECORD_API_BASE before loading the app. */
export const DEFAULT_API_BASE = "http://127.0.0.1:8080";
